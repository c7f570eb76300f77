#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "coopgrid/arena.hpp"
#include "coopgrid/config.hpp"
#include "coopgrid/metrics.hpp"

namespace coopgrid {

inline constexpr const char* kVersion = "0.1.0";

// One CSV row, already formatted; kept as text so that arena parallelism
// cannot change the output bytes.
std::string format_metrics_row(int arena, std::uint64_t seed, int episode,
                               const MetricsRecord& rec);

// Per-episode mean of a block of per-timestep records. Optional columns
// average over the timesteps where they were defined.
MetricsRecord episode_mean(const std::vector<MetricsRecord>& records);

struct RunResult {
  std::filesystem::path csv_path;
  std::filesystem::path manifest_path;
  std::vector<std::filesystem::path> snapshot_paths;
};

// Full training run: seeds x arenas, each the episode/timestep double loop.
// Emits metrics.csv, final snapshots and a manifest under cfg.out_dir.
// Output bytes depend only on (config, seed), never on cfg.threads.
RunResult run_experiment(const ExperimentConfig& cfg);

// Plain-text strategy grid plus a per-agent CSV (row, col, strategy, CR,
// raw payoff). Writes <base>.txt and <base>.csv.
void write_snapshot(const Arena& arena, const std::filesystem::path& base);

struct SummaryRow {
  std::string metric;
  double mean = 0.0;
  double stddev = 0.0;
  int seeds = 0;
};

// Mean and sample standard deviation across seeds of each metric over the
// final tail_episodes episodes.
std::vector<SummaryRow> aggregate_runs(
    const std::vector<std::filesystem::path>& csv_paths, int tail_episodes);

std::string summary_to_csv(const std::vector<SummaryRow>& rows);

}  // namespace coopgrid
