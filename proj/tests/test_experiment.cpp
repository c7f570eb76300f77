#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "coopgrid/arena.hpp"
#include "coopgrid/config.hpp"
#include "coopgrid/runner.hpp"

using namespace coopgrid;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "coopgrid_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Small-but-real configuration that exercises the full RL path quickly.
ExperimentConfig tiny_config(const fs::path& out) {
  ExperimentConfig cfg;
  cfg.side = 3;
  cfg.window = 2;
  cfg.episodes = 2;
  cfg.timesteps = 5;
  cfg.arenas = 2;
  cfg.seeds = 2;
  cfg.seed = 11;
  cfg.buffer_capacity = 256;
  cfg.eps_duration = 5;
  cfg.out_dir = out.string();
  return cfg;
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("defaults survive an empty file") {
    const auto cfg = parse_config("# nothing but a comment\n\n");
    CHECK(cfg.side == 30);
    CHECK(cfg.b == 1.2);
    CHECK(cfg.variant == AgentVariant::DualRL);
    CHECK(cfg.alpha == 0.6);
    CHECK(cfg.window == 4);
    CHECK(cfg.episodes == 6000);
    CHECK(cfg.timesteps == 10);
    CHECK(cfg.arenas == 10);
    CHECK(cfg.seeds == 5);
    CHECK(cfg.gamma == 0.99);
    CHECK(cfg.buffer_capacity == 10000);
    CHECK(cfg.batch_size == 32);
    CHECK(cfg.update_every == 5);
    CHECK(cfg.tau == 0.01);
    CHECK(cfg.per_alpha == 0.6);
    CHECK(cfg.per_beta_start == 0.4);
    CHECK(cfg.egt_k == 0.1);
    CHECK(cfg.eps_duration == 2000);
  }

  SUBCASE("keys, comments and whitespace") {
    const auto cfg = parse_config(
        "side = 5   # small lattice\n"
        "b=1.5\n"
        "variant = egt\n"
        "seeds = 3\n");
    CHECK(cfg.side == 5);
    CHECK(cfg.b == 1.5);
    CHECK(cfg.variant == AgentVariant::EGT);
    CHECK(cfg.seeds == 3);
  }

  SUBCASE("unknown keys and bad values are rejected") {
    CHECK_THROWS_AS(parse_config("sides = 5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("side = five\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("variant = banana\n"), ConfigError);
  }

  SUBCASE("validate names the offending field") {
    ExperimentConfig cfg;
    cfg.b = 2.5;
    try {
      cfg.validate();
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("b") != std::string::npos);
    }
    cfg.b = 1.2;
    cfg.side = 2;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }

  SUBCASE("serialization round-trips every field") {
    ExperimentConfig cfg;
    cfg.side = 7;
    cfg.b = 1.35;
    cfg.variant = AgentVariant::SingleRL;
    cfg.alpha = 0.5;
    cfg.window = 3;
    cfg.episodes = 123;
    cfg.arenas = 4;
    cfg.seed = 42;
    cfg.tau = 0.02;
    cfg.out_dir = "somewhere/else";
    cfg.threads = 8;
    const auto back = parse_config(config_to_text(cfg));
    CHECK(back.side == cfg.side);
    CHECK(back.b == cfg.b);
    CHECK(back.variant == cfg.variant);
    CHECK(back.alpha == cfg.alpha);
    CHECK(back.window == cfg.window);
    CHECK(back.episodes == cfg.episodes);
    CHECK(back.arenas == cfg.arenas);
    CHECK(back.seed == cfg.seed);
    CHECK(back.tau == cfg.tau);
    CHECK(back.out_dir == cfg.out_dir);
    CHECK(back.threads == cfg.threads);
  }
}

TEST_CASE("arena stores one transition per agent per timestep") {
  ExperimentConfig cfg = tiny_config(fresh_dir("transitions"));
  cfg.side = 5;
  cfg.episodes = 2;
  cfg.timesteps = 10;
  Arena arena(cfg, /*seed=*/3, /*arena_index=*/0);
  for (int t = 0; t < cfg.episodes * cfg.timesteps; ++t) arena.step();
  const long expected = 2L * 10 * 25;
  CHECK(arena.dilemma_transitions() == expected);
  CHECK(arena.selection_transitions() == expected);

  cfg.variant = AgentVariant::DilemmaOnlyRL;
  Arena d_only(cfg, 3, 0);
  for (int t = 0; t < 20; ++t) d_only.step();
  CHECK(d_only.dilemma_transitions() == expected);
  CHECK(d_only.selection_transitions() == 0);
}

TEST_CASE("run output is byte-identical across thread counts") {
  auto cfg1 = tiny_config(fresh_dir("threads1"));
  cfg1.threads = 1;
  auto cfg4 = cfg1;
  cfg4.threads = 4;
  cfg4.out_dir = fresh_dir("threads4").string();

  const auto r1 = run_experiment(cfg1);
  const auto r4 = run_experiment(cfg4);
  const auto csv1 = read_file(r1.csv_path);
  CHECK(csv1 == read_file(r4.csv_path));
  CHECK(csv1.rfind(kMetricsCsvHeader, 0) == 0);

  // seeds * arenas blocks of per-episode rows.
  const long lines = std::count(csv1.begin(), csv1.end(), '\n');
  CHECK(lines == 1 + cfg1.seeds * cfg1.arenas * cfg1.episodes);

  // Same config, same seed: a rerun reproduces the run byte for byte.
  auto cfg_again = cfg1;
  cfg_again.out_dir = fresh_dir("threads1_again").string();
  CHECK(read_file(run_experiment(cfg_again).csv_path) == csv1);
}

TEST_CASE("stride emits per-timestep rows") {
  auto cfg = tiny_config(fresh_dir("stride"));
  cfg.stride = 1;
  cfg.seeds = 1;
  cfg.arenas = 1;
  const auto r = run_experiment(cfg);
  const auto csv = read_file(r.csv_path);
  const long lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 1 + cfg.episodes * cfg.timesteps);
}

TEST_CASE("manifest records the configuration") {
  auto cfg = tiny_config(fresh_dir("manifest"));
  const auto r = run_experiment(cfg);
  const auto manifest = read_file(r.manifest_path);
  CHECK(manifest.find("version") != std::string::npos);
  CHECK(manifest.find("side = 3") != std::string::npos);
  CHECK(manifest.find("seed = 11") != std::string::npos);
}

TEST_CASE("aggregate over fabricated metrics") {
  const auto dir = fresh_dir("aggregate");
  const auto make_csv = [&](const std::string& name,
                            const std::string& body) {
    const fs::path p = dir / name;
    std::ofstream out(p);
    out << kMetricsCsvHeader << "\n" << body;
    return p;
  };
  // Two seeds. With a tail of 2 only episodes 3 and 4 count, so the early
  // 0.9 rows of seed 1 must be ignored: tail means are 0.4 and 0.6.
  const auto row = [](int seed, int ep, const std::string& coop) {
    return "0," + std::to_string(seed) + "," + std::to_string(ep) + ",0," +
           coop +
           ",0.000000,0.000000,nan,nan,nan,nan,nan,nan,nan,nan,nan,"
           "1.000000,0.000000,0.000000\n";
  };
  const auto a = make_csv("a.csv", row(1, 1, "0.900000") +
                                       row(1, 2, "0.900000") +
                                       row(1, 3, "0.400000") +
                                       row(1, 4, "0.400000"));
  const auto b = make_csv("b.csv", row(2, 1, "0.100000") +
                                       row(2, 2, "0.600000") +
                                       row(2, 3, "0.600000") +
                                       row(2, 4, "0.600000"));

  // Tail of 2 keeps episodes 3 and 4 only: seed 1 averages to 0.4.
  const auto summary = aggregate_runs({a, b}, 2);
  REQUIRE(!summary.empty());
  CHECK(summary[0].metric == "coop_frac");
  CHECK(summary[0].seeds == 2);
  CHECK(summary[0].mean == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(summary[0].stddev ==
        doctest::Approx(0.1414213562).epsilon(1e-6));

  // gini was constant zero in both files.
  CHECK(summary[1].metric == "gini");
  CHECK(summary[1].mean == doctest::Approx(0.0));

  // Optional columns that were always nan report zero contributing seeds.
  bool saw_absent = false;
  for (const auto& row : summary)
    if (row.metric == "pay_coop") {
      CHECK(row.seeds == 0);
      saw_absent = true;
    }
  CHECK(saw_absent);

  const auto csv_text = summary_to_csv(summary);
  CHECK(csv_text.rfind("metric,mean,std,seeds\n", 0) == 0);
  CHECK(csv_text.find("coop_frac,0.500000") != std::string::npos);

  const auto bad = make_csv("bad.csv", "");
  {
    std::ofstream out(bad);
    out << "not,the,schema\n";
  }
  CHECK_THROWS(aggregate_runs({bad}, 2));
}

TEST_CASE("snapshots round-trip through their CSV") {
  auto cfg = tiny_config(fresh_dir("snapshot"));
  Arena arena(cfg, 11, 0);
  for (int t = 0; t < 10; ++t) arena.step();
  const fs::path base = fs::path(cfg.out_dir) / "snap";
  write_snapshot(arena, base);

  // The text grid matches the arena strategies row by row.
  const auto strategies = arena.strategies();
  std::ifstream txt(base.string() + ".txt");
  REQUIRE(txt);
  std::string line;
  for (int row = 0; row < cfg.side; ++row) {
    REQUIRE(std::getline(txt, line));
    REQUIRE(line.size() == static_cast<std::size_t>(cfg.side));
    for (int col = 0; col < cfg.side; ++col) {
      const char want =
          strategies[row * cfg.side + col] == DilemmaAction::Cooperate ? 'C'
                                                                       : 'D';
      CHECK(line[col] == want);
    }
  }

  // The CSV has one line per agent and its CR column matches a recount of
  // offers received from the stored selections.
  std::ifstream csv(base.string() + ".csv");
  REQUIRE(csv);
  REQUIRE(std::getline(csv, line));
  CHECK(line == "row,col,strategy,cr,payoff");
  const auto& grid = arena.grid();
  const auto& selections = arena.selections();
  int agents_seen = 0;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');
    const int row = std::stoi(field);
    std::getline(ss, field, ',');
    const int col = std::stoi(field);
    std::getline(ss, field, ',');
    const std::string strat = field;
    std::getline(ss, field, ',');
    const double cr = std::stod(field);
    const int id = row * cfg.side + col;
    CHECK(strat == (strategies[id] == DilemmaAction::Cooperate ? "C" : "D"));
    int received = 0;
    const auto nb = grid.neighbours(id);
    for (int s = 0; s < kNeighbourCount; ++s)
      received += selections[nb[s]].bits[opposite_slot(s)];
    CHECK(cr == doctest::Approx(received / 4.0));
    ++agents_seen;
  }
  CHECK(agents_seen == grid.size());
}

TEST_CASE("egt runs end to end") {
  auto cfg = tiny_config(fresh_dir("egt_run"));
  cfg.variant = AgentVariant::EGT;
  cfg.side = 4;
  const auto r = run_experiment(cfg);
  const auto csv = read_file(r.csv_path);
  const long lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 1 + cfg.seeds * cfg.arenas * cfg.episodes);

  // Coop fraction stays a valid fraction on every row.
  std::istringstream ss(csv);
  std::string line;
  std::getline(ss, line);  // header
  while (std::getline(ss, line)) {
    std::istringstream row(line);
    std::string field;
    for (int i = 0; i < 5; ++i) std::getline(row, field, ',');
    const double coop = std::stod(field);
    CHECK(coop >= 0.0);
    CHECK(coop <= 1.0);
  }
}
