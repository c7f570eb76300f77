#include "coopgrid/runner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace coopgrid {

namespace fs = std::filesystem;

namespace {

constexpr std::array<const char*, kMetricsColumnCount> kColumnNames = {
    "coop_frac", "gini",  "pay_mean", "pay_coop", "pay_def",
    "cr_c",      "cr_d",  "ec_c",     "ec_d",     "lc_cc",
    "lc_cd",     "lc_dd", "lp_cc",    "lp_cd",    "lp_dd"};

using Columns = std::array<std::optional<double>, kMetricsColumnCount>;

Columns to_columns(const MetricsRecord& r) {
  return {r.coop_frac, r.gini,  r.pay_mean, r.pay_coop, r.pay_def,
          r.cr_c,      r.cr_d,  r.ec_c,     r.ec_d,     r.lc_cc,
          r.lc_cd,     r.lc_dd, r.lp_cc,    r.lp_cd,    r.lp_dd};
}

MetricsRecord from_columns(long timestep, const Columns& c) {
  MetricsRecord r;
  r.timestep = timestep;
  r.coop_frac = c[0].value_or(0.0);
  r.gini = c[1].value_or(0.0);
  r.pay_mean = c[2].value_or(0.0);
  r.pay_coop = c[3];
  r.pay_def = c[4];
  r.cr_c = c[5];
  r.cr_d = c[6];
  r.ec_c = c[7];
  r.ec_d = c[8];
  r.lc_cc = c[9];
  r.lc_cd = c[10];
  r.lc_dd = c[11];
  r.lp_cc = c[12].value_or(0.0);
  r.lp_cd = c[13].value_or(0.0);
  r.lp_dd = c[14].value_or(0.0);
  return r;
}

void append_value(std::string& row, const std::optional<double>& v) {
  char buf[32];
  if (v.has_value())
    std::snprintf(buf, sizeof buf, ",%.6f", *v);
  else
    std::snprintf(buf, sizeof buf, ",nan");
  row += buf;
}

}  // namespace

std::string format_metrics_row(int arena, std::uint64_t seed, int episode,
                               const MetricsRecord& rec) {
  std::string row = std::to_string(arena) + "," + std::to_string(seed) + "," +
                    std::to_string(episode) + "," +
                    std::to_string(rec.timestep);
  for (const auto& v : to_columns(rec)) append_value(row, v);
  return row;
}

MetricsRecord episode_mean(const std::vector<MetricsRecord>& records) {
  Columns sums{};
  std::array<int, kMetricsColumnCount> counts{};
  for (const auto& rec : records) {
    const Columns c = to_columns(rec);
    for (int k = 0; k < kMetricsColumnCount; ++k) {
      if (!c[k].has_value()) continue;
      sums[k] = sums[k].value_or(0.0) + *c[k];
      ++counts[k];
    }
  }
  Columns means{};
  for (int k = 0; k < kMetricsColumnCount; ++k)
    if (counts[k] > 0) means[k] = *sums[k] / counts[k];
  return from_columns(records.empty() ? 0 : records.back().timestep, means);
}

void write_snapshot(const Arena& arena, const fs::path& base) {
  const auto& grid = arena.grid();
  const auto strategies = arena.strategies();
  const auto& selections = arena.selections();
  const auto& raw = arena.raw_payoffs();

  fs::path txt = base;
  txt += ".txt";
  std::ofstream grid_out(txt);
  if (!grid_out) throw std::runtime_error("cannot write " + txt.string());
  for (int r = 0; r < grid.side(); ++r) {
    for (int c = 0; c < grid.side(); ++c)
      grid_out << (strategies[r * grid.side() + c] == DilemmaAction::Cooperate
                       ? 'C'
                       : 'D');
    grid_out << '\n';
  }

  fs::path csv = base;
  csv += ".csv";
  std::ofstream agents_out(csv);
  if (!agents_out) throw std::runtime_error("cannot write " + csv.string());
  agents_out << "row,col,strategy,cr,payoff\n";
  char buf[64];
  for (int i = 0; i < grid.size(); ++i) {
    const auto nb = grid.neighbours(i);
    OfferBits toward{};
    for (int j = 0; j < kNeighbourCount; ++j)
      toward[j] = selections[nb[j]].bits[opposite_slot(j)];
    std::snprintf(buf, sizeof buf, "%d,%d,%c,%.6f,%.6f\n", grid.row(i),
                  grid.col(i),
                  strategies[i] == DilemmaAction::Cooperate ? 'C' : 'D',
                  connectivity_ratio(toward), raw[i]);
    agents_out << buf;
  }
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  const fs::path out_dir(cfg.out_dir);

  struct Task {
    std::uint64_t seed;
    int arena;
    std::vector<std::string> rows;
    fs::path snapshot_base;
    std::exception_ptr error;
  };
  std::vector<Task> tasks;
  for (int s = 0; s < cfg.seeds; ++s)
    for (int a = 0; a < cfg.arenas; ++a)
      tasks.push_back({cfg.seed + static_cast<std::uint64_t>(s), a, {},
                       out_dir / ("snapshot_seed" +
                                  std::to_string(cfg.seed + s) + "_arena" +
                                  std::to_string(a)),
                       nullptr});

  auto run_task = [&cfg](Task& task) {
    Arena arena(cfg, task.seed, task.arena);
    std::vector<MetricsRecord> episode_records;
    for (int e = 0; e < cfg.episodes; ++e) {
      episode_records.clear();
      for (int t = 0; t < cfg.timesteps; ++t) {
        MetricsRecord rec = arena.step();
        if (cfg.stride == 0) {
          episode_records.push_back(rec);
        } else if (arena.timestep() % cfg.stride == 0) {
          task.rows.push_back(format_metrics_row(task.arena, task.seed, e, rec));
        }
      }
      if (cfg.stride == 0)
        task.rows.push_back(format_metrics_row(task.arena, task.seed, e,
                                               episode_mean(episode_records)));
    }
    write_snapshot(arena, task.snapshot_base);
  };

  const int workers =
      std::min<int>(cfg.threads, static_cast<int>(tasks.size()));
  if (workers <= 1) {
    for (auto& task : tasks) {
      try {
        run_task(task);
      } catch (...) {
        std::ofstream marker(out_dir / "INCOMPLETE");
        marker << "run aborted; outputs are partial\n";
        throw;
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          try {
            run_task(tasks[i]);
          } catch (...) {
            tasks[i].error = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& task : tasks) {
      if (task.error) {
        std::ofstream marker(out_dir / "INCOMPLETE");
        marker << "run aborted; outputs are partial\n";
        std::rethrow_exception(task.error);
      }
    }
  }

  RunResult result;
  result.csv_path = out_dir / "metrics.csv";
  std::ofstream csv(result.csv_path);
  if (!csv)
    throw std::runtime_error("cannot write " + result.csv_path.string());
  csv << kMetricsCsvHeader << "\n";
  for (const auto& task : tasks) {
    for (const auto& row : task.rows) csv << row << "\n";
    result.snapshot_paths.push_back(task.snapshot_base);
  }

  result.manifest_path = out_dir / "manifest.txt";
  std::ofstream manifest(result.manifest_path);
  manifest << "version = " << kVersion << "\n" << config_to_text(cfg);
  manifest << "seeds_used =";
  for (int s = 0; s < cfg.seeds; ++s) manifest << " " << (cfg.seed + s);
  manifest << "\n";
  return result;
}

namespace {

struct ParsedRow {
  std::uint64_t seed;
  int episode;
  Columns values;
};

std::vector<ParsedRow> parse_metrics_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot read metrics CSV '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != kMetricsCsvHeader)
    throw std::runtime_error("schema mismatch in '" + path.string() +
                             "': unexpected header");
  std::vector<ParsedRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (static_cast<int>(fields.size()) != 4 + kMetricsColumnCount)
      throw std::runtime_error("schema mismatch in '" + path.string() +
                               "': wrong column count");
    ParsedRow row;
    row.seed = std::stoull(fields[1]);
    row.episode = std::stoi(fields[2]);
    for (int k = 0; k < kMetricsColumnCount; ++k) {
      const double v = std::stod(fields[4 + k]);
      if (!std::isnan(v)) row.values[k] = v;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<SummaryRow> aggregate_runs(const std::vector<fs::path>& csv_paths,
                                       int tail_episodes) {
  if (csv_paths.empty())
    throw std::runtime_error("aggregate: no input CSVs given");
  std::vector<ParsedRow> rows;
  for (const auto& p : csv_paths) {
    auto r = parse_metrics_csv(p);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (rows.empty()) throw std::runtime_error("aggregate: no data rows");

  int max_episode = 0;
  for (const auto& r : rows) max_episode = std::max(max_episode, r.episode);
  const int cutoff = max_episode - tail_episodes;  // keep episode > cutoff

  // Per-seed tail means, then mean / sample std across seeds.
  std::vector<std::uint64_t> seeds;
  for (const auto& r : rows)
    if (std::find(seeds.begin(), seeds.end(), r.seed) == seeds.end())
      seeds.push_back(r.seed);
  std::sort(seeds.begin(), seeds.end());

  std::vector<SummaryRow> summary(kMetricsColumnCount);
  for (int k = 0; k < kMetricsColumnCount; ++k) {
    std::vector<double> per_seed;
    for (std::uint64_t s : seeds) {
      double sum = 0.0;
      int count = 0;
      for (const auto& r : rows) {
        if (r.seed != s || r.episode <= cutoff || !r.values[k].has_value())
          continue;
        sum += *r.values[k];
        ++count;
      }
      if (count > 0) per_seed.push_back(sum / count);
    }
    SummaryRow& out = summary[k];
    out.metric = kColumnNames[k];
    out.seeds = static_cast<int>(per_seed.size());
    if (!per_seed.empty()) {
      double sum = 0.0;
      for (double v : per_seed) sum += v;
      out.mean = sum / per_seed.size();
      if (per_seed.size() > 1) {
        double sq = 0.0;
        for (double v : per_seed) sq += (v - out.mean) * (v - out.mean);
        out.stddev = std::sqrt(sq / (per_seed.size() - 1));
      }
    }
  }
  return summary;
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "metric,mean,std,seeds\n";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%d\n", r.metric.c_str(),
                  r.mean, r.stddev, r.seeds);
    out += buf;
  }
  return out;
}

}  // namespace coopgrid
