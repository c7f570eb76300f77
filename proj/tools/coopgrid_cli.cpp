#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coopgrid/config.hpp"
#include "coopgrid/runner.hpp"

namespace {

using coopgrid::ExperimentConfig;

// Config resolution order: defaults < config file < command-line flags.
// Collected as raw key=value pairs so file and flag parsing share one path.
struct ConfigFlags {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_config_options(CLI::App* cmd, ConfigFlags& flags) {
  cmd->add_option("--config", flags.config_path,
                  "config file (key = value lines)");
  static const std::vector<std::pair<std::string, std::string>> kKeys = {
      {"--side", "side"},
      {"--b", "b"},
      {"--variant", "variant"},
      {"--alpha", "alpha"},
      {"--window", "window"},
      {"--episodes", "episodes"},
      {"--timesteps", "timesteps"},
      {"--arenas", "arenas"},
      {"--seeds", "seeds"},
      {"--seed", "seed"},
      {"--gamma", "gamma"},
      {"--base-lr", "base_lr"},
      {"--lr-start", "lr_start"},
      {"--lr-end", "lr_end"},
      {"--eps-dilemma-start", "eps_dilemma_start"},
      {"--eps-dilemma-end", "eps_dilemma_end"},
      {"--eps-selection-start", "eps_selection_start"},
      {"--eps-selection-end", "eps_selection_end"},
      {"--eps-duration", "eps_duration"},
      {"--buffer-capacity", "buffer_capacity"},
      {"--batch-size", "batch_size"},
      {"--update-every", "update_every"},
      {"--tau", "tau"},
      {"--per-alpha", "per_alpha"},
      {"--per-beta-start", "per_beta_start"},
      {"--per-beta-end", "per_beta_end"},
      {"--egt-k", "egt_k"},
      {"--out-dir", "out_dir"},
      {"--stride", "stride"},
      {"--threads", "threads"},
  };
  for (const auto& [flag, key] : kKeys) {
    const std::string key_copy = key;
    cmd->add_option_function<std::string>(
        flag,
        [&flags, key_copy](const std::string& v) {
          flags.overrides.emplace_back(key_copy, v);
        },
        "config key '" + key + "'");
  }
}

ExperimentConfig resolve_config(const ConfigFlags& flags) {
  ExperimentConfig cfg;
  if (!flags.config_path.empty()) cfg = coopgrid::load_config(flags.config_path);
  bool out_dir_set = !flags.config_path.empty();
  for (const auto& [key, value] : flags.overrides) {
    coopgrid::apply_key_value(cfg, key, value);
    if (key == "out_dir") out_dir_set = true;
  }
  if (!out_dir_set) {
    if (const char* env = std::getenv("COOPGRID_OUT_DIR"))
      cfg.out_dir = env;
  }
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice coevolution of dilemma strategies and neighbour "
               "selection via independent Q-learning"};
  app.require_subcommand(1);

  ConfigFlags run_flags, snapshot_flags, sweep_flags;
  std::vector<std::string> aggregate_inputs;
  int tail_episodes = 10;
  std::string aggregate_out;
  std::vector<double> sweep_b;
  std::vector<std::string> sweep_variants;

  auto* run = app.add_subcommand("run", "train one configuration");
  add_config_options(run, run_flags);

  auto* aggregate =
      app.add_subcommand("aggregate", "summarize metrics CSVs across seeds");
  aggregate->add_option("csvs", aggregate_inputs, "metrics CSV paths")
      ->required();
  aggregate->add_option("--tail", tail_episodes,
                        "number of final episodes to average (default 10)");
  aggregate->add_option("--out", aggregate_out, "write summary CSV here");

  auto* snapshot =
      app.add_subcommand("snapshot", "run a configuration, emit only the "
                                     "final lattice snapshot");
  add_config_options(snapshot, snapshot_flags);

  auto* sweep = app.add_subcommand(
      "sweep", "run the Cartesian product of --b and --variant lists");
  add_config_options(sweep, sweep_flags);
  sweep->add_option("--b-list", sweep_b, "dilemma strengths")
      ->required()
      ->delimiter(',');
  sweep->add_option("--variant-list", sweep_variants, "agent variants")
      ->required()
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto cfg = resolve_config(run_flags);
      const auto result = coopgrid::run_experiment(cfg);
      std::cout << "wrote " << result.csv_path.string() << "\n";
    } else if (aggregate->parsed()) {
      std::vector<std::filesystem::path> paths(aggregate_inputs.begin(),
                                               aggregate_inputs.end());
      const auto summary = coopgrid::aggregate_runs(paths, tail_episodes);
      const std::string csv = coopgrid::summary_to_csv(summary);
      if (!aggregate_out.empty()) {
        std::ofstream out(aggregate_out);
        if (!out) throw std::runtime_error("cannot write " + aggregate_out);
        out << csv;
      }
      std::cout << csv;
    } else if (snapshot->parsed()) {
      auto cfg = resolve_config(snapshot_flags);
      std::filesystem::create_directories(cfg.out_dir);
      for (int s = 0; s < cfg.seeds; ++s) {
        for (int a = 0; a < cfg.arenas; ++a) {
          coopgrid::Arena arena(cfg, cfg.seed + s, a);
          for (long t = 0; t < cfg.total_timesteps(); ++t) arena.step();
          const auto base =
              std::filesystem::path(cfg.out_dir) /
              ("snapshot_seed" + std::to_string(cfg.seed + s) + "_arena" +
               std::to_string(a));
          coopgrid::write_snapshot(arena, base);
          std::cout << "wrote " << base.string() << ".txt\n";
        }
      }
    } else if (sweep->parsed()) {
      const auto base_cfg = resolve_config(sweep_flags);
      for (double b : sweep_b) {
        for (const auto& variant : sweep_variants) {
          ExperimentConfig cfg = base_cfg;
          cfg.b = b;
          cfg.variant = coopgrid::parse_variant(variant);
          cfg.out_dir = (std::filesystem::path(base_cfg.out_dir) /
                         ("b" + std::to_string(b).substr(0, 4) + "_" + variant))
                            .string();
          cfg.validate();
          const auto result = coopgrid::run_experiment(cfg);
          std::cout << "wrote " << result.csv_path.string() << "\n";
        }
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
