#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "coopgrid/agent.hpp"

namespace coopgrid {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat run configuration; defaults are the reference training setup.
struct ExperimentConfig {
  int side = 30;                   // L
  double b = 1.2;                  // dilemma strength
  AgentVariant variant = AgentVariant::DualRL;
  double alpha = 0.6;              // payoff memory weight
  int window = 4;                  // W, network observation window
  int episodes = 6000;
  int timesteps = 10;              // per episode
  int arenas = 10;
  int seeds = 5;
  std::uint64_t seed = 1;          // base seed; run uses seed..seed+seeds-1
  double gamma = 0.99;
  double base_lr = 1e-3;
  double lr_start = 1.0;           // multiplier schedule over the full run
  double lr_end = 0.05;
  double eps_dilemma_start = 1.0;
  double eps_dilemma_end = 0.05;
  double eps_selection_start = 1.0;
  double eps_selection_end = 0.1;
  long eps_duration = 2000;
  int buffer_capacity = 10000;
  int batch_size = 32;
  int update_every = 5;
  double tau = 0.01;
  double per_alpha = 0.6;
  double per_beta_start = 0.4;
  double per_beta_end = 1.0;       // reaches 1 at the end of the run
  double egt_k = 0.1;
  std::string out_dir = "out";
  int stride = 0;                  // 0 = emit per-episode means
  int threads = 1;                 // arena parallelism; never affects output

  long total_timesteps() const {
    return static_cast<long>(episodes) * timesteps;
  }

  void validate() const;  // throws ConfigError naming the offending field
};

// Applies one `key = value` override; throws ConfigError on unknown keys or
// unparsable values.
void apply_key_value(ExperimentConfig& cfg, const std::string& key,
                     const std::string& value);

// Flat text, one `key = value` per line, '#' comments.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text);

std::string config_to_text(const ExperimentConfig& cfg);

}  // namespace coopgrid
