#pragma once

#include <vector>

#include "coopgrid/agent.hpp"
#include "coopgrid/config.hpp"
#include "coopgrid/lattice.hpp"
#include "coopgrid/metrics.hpp"
#include "coopgrid/optim.hpp"

namespace coopgrid {

// One Monte Carlo sweep of Fermi imitation: size() random sequential pair
// updates. Strategy reads compare against the fixed payoff snapshot;
// strategy writes are live, so later picks see earlier adoptions.
void egt_mc_update(std::vector<DilemmaAction>& strategies,
                   const std::vector<double>& payoff_snapshot,
                   const LatticeGrid& grid, double k, Rng& rng);

// One independent lattice world: agents, their learners and memories, the
// RNG streams, and the timestep counter that drives every schedule.
class Arena {
 public:
  Arena(const ExperimentConfig& cfg, std::uint64_t seed, int arena_index);

  // Advances one timestep (RL variants) or one MC sweep (EGT) and returns
  // the metrics of the resulting round.
  MetricsRecord step();

  long timestep() const { return t_; }
  const LatticeGrid& grid() const { return grid_; }
  const std::vector<SelectionAction>& selections() const { return selections_; }
  const std::vector<double>& raw_payoffs() const { return raw_; }
  const std::vector<double>& smoothed_payoffs() const { return smoothed_; }
  std::vector<DilemmaAction> strategies() const;

  // Total transitions stored across all agents, per buffer kind.
  long dilemma_transitions() const;
  long selection_transitions() const;

 private:
  MetricsRecord step_rl();
  MetricsRecord step_egt();

  ExperimentConfig cfg_;
  LatticeGrid grid_;
  PayoffMatrix matrix_;
  std::vector<Agent> agents_;
  std::vector<SelectionAction> selections_;
  std::vector<double> raw_;
  std::vector<double> smoothed_;
  LinearSchedule eps_dilemma_, eps_selection_, lr_mult_, per_beta_;
  LearnSettings learn_;
  Rng egt_rng_;
  long t_ = 0;
};

}  // namespace coopgrid
