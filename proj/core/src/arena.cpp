#include "coopgrid/arena.hpp"

#include "coopgrid/utility.hpp"

namespace coopgrid {

void egt_mc_update(std::vector<DilemmaAction>& strategies,
                   const std::vector<double>& payoff_snapshot,
                   const LatticeGrid& grid, double k, Rng& rng) {
  const int n = grid.size();
  for (int step = 0; step < n; ++step) {
    const int i = rng.uniform_int(n);
    const int j = grid.neighbours(i)[rng.uniform_int(kNeighbourCount)];
    const double p =
        fermi_adopt_probability(payoff_snapshot[i], payoff_snapshot[j], k);
    if (rng.uniform() < p) strategies[i] = strategies[j];
  }
}

Arena::Arena(const ExperimentConfig& cfg, std::uint64_t seed, int arena_index)
    : cfg_(cfg),
      grid_(cfg.side),
      matrix_{cfg.b},
      eps_dilemma_{cfg.eps_dilemma_start, cfg.eps_dilemma_end,
                   cfg.eps_duration},
      eps_selection_{cfg.eps_selection_start, cfg.eps_selection_end,
                     cfg.eps_duration},
      lr_mult_{cfg.lr_start, cfg.lr_end, cfg.total_timesteps()},
      per_beta_{cfg.per_beta_start, cfg.per_beta_end, cfg.total_timesteps()},
      learn_{cfg.batch_size, cfg.update_every, cfg.gamma},
      egt_rng_(Rng::stream(seed, static_cast<std::uint64_t>(arena_index), 0,
                           StreamPurpose::EgtUpdate)) {
  const int n = grid_.size();
  agents_.reserve(n);
  for (int i = 0; i < n; ++i)
    agents_.emplace_back(cfg.variant, cfg.window, cfg.alpha,
                         cfg.buffer_capacity, cfg.per_alpha, cfg.base_lr, seed,
                         static_cast<std::uint64_t>(arena_index),
                         static_cast<std::uint64_t>(i));
  selections_.assign(n, SelectionAction::all_on());
  raw_.assign(n, 0.0);
  smoothed_.assign(n, 0.0);
}

std::vector<DilemmaAction> Arena::strategies() const {
  std::vector<DilemmaAction> out(agents_.size());
  for (std::size_t i = 0; i < agents_.size(); ++i)
    out[i] = agents_[i].strategy();
  return out;
}

long Arena::dilemma_transitions() const {
  long total = 0;
  for (const auto& a : agents_) {
    if (a.dilemma_learner()) total += a.dilemma_learner()->buffer.total_added();
    if (a.joint_learner()) total += a.joint_learner()->buffer.total_added();
  }
  return total;
}

long Arena::selection_transitions() const {
  long total = 0;
  for (const auto& a : agents_) {
    if (a.selection_learner())
      total += a.selection_learner()->buffer.total_added();
    if (a.joint_learner()) total += a.joint_learner()->buffer.total_added();
  }
  return total;
}

MetricsRecord Arena::step() {
  return cfg_.variant == AgentVariant::EGT ? step_egt() : step_rl();
}

MetricsRecord Arena::step_rl() {
  const int n = grid_.size();
  const double eps_d = eps_dilemma_.value(t_);
  const double eps_s = eps_selection_.value(t_);
  const double lr_mult = lr_mult_.value(t_);
  const double beta = per_beta_.value(t_);

  std::vector<std::vector<double>> s_d(n), s_s(n);
  for (int i = 0; i < n; ++i) {
    s_d[i] = encode_dilemma_state(agents_[i].window());
    s_s[i] = encode_selection_state(agents_[i].window());
  }

  std::vector<ActionPair> actions(n);
  std::vector<DilemmaAction> dilemmas(n);
  for (int i = 0; i < n; ++i) {
    actions[i] = agents_[i].act(s_d[i], s_s[i], eps_d, eps_s);
    dilemmas[i] = actions[i].dilemma;
    selections_[i] = actions[i].selection;
  }

  const RoundOutcome round = play_round(dilemmas, selections_, grid_, matrix_);
  raw_ = round.raw_payoffs;

  // Record the round and compute memory-weighted payoffs; the average uses
  // the history before this round enters it.
  std::vector<std::array<DilemmaAction, kNeighbourCount>> neighbour_dilemmas(n);
  for (int i = 0; i < n; ++i) {
    const auto nb = grid_.neighbours(i);
    RoundView view;
    view.own_dilemma = dilemmas[i];
    view.own_offers = selections_[i].bits;
    for (int j = 0; j < kNeighbourCount; ++j) {
      view.neighbour_dilemmas[j] = dilemmas[nb[j]];
      view.offers_toward_me[j] = selections_[nb[j]].bits[opposite_slot(j)];
    }
    neighbour_dilemmas[i] = view.neighbour_dilemmas;
    agents_[i].window().push(view);
    smoothed_[i] = agents_[i].payoff_memory().smoothed(raw_[i]);
    agents_[i].payoff_memory().push(raw_[i]);
  }

  const auto averages = population_averages(smoothed_, dilemmas);

  std::vector<double> next_d, next_s;
  for (int i = 0; i < n; ++i) {
    const double utility = counterfactual_utility(
        smoothed_[i], dilemmas[i], neighbour_dilemmas[i], averages);
    next_d = encode_dilemma_state(agents_[i].window());
    next_s = encode_selection_state(agents_[i].window());
    agents_[i].learn(s_d[i], s_s[i], actions[i], utility, next_d, next_s,
                     learn_, beta, lr_mult);
  }
  for (int i = 0; i < n; ++i) agents_[i].soft_update_targets(cfg_.tau);

  ++t_;
  return compute_metrics(t_ - 1, dilemmas, selections_, smoothed_, grid_);
}

MetricsRecord Arena::step_egt() {
  const int n = grid_.size();
  std::vector<DilemmaAction> strategies = this->strategies();

  // Classic lattice game: every agent plays all four neighbours.
  const std::vector<SelectionAction> all_on(n, SelectionAction::all_on());
  const RoundOutcome round = play_round(strategies, all_on, grid_, matrix_);
  raw_ = round.raw_payoffs;
  for (int i = 0; i < n; ++i) {
    smoothed_[i] = agents_[i].payoff_memory().smoothed(raw_[i]);
    agents_[i].payoff_memory().push(raw_[i]);
  }

  // Imitation compares the round's payoffs on the per-neighbour scale the
  // utility function also uses; memory-weighted payoffs feed the reported
  // metrics only.
  std::vector<double> fermi_payoffs(n);
  for (int i = 0; i < n; ++i) fermi_payoffs[i] = raw_[i] / kNeighbourCount;

  egt_mc_update(strategies, fermi_payoffs, grid_, cfg_.egt_k, egt_rng_);
  for (int i = 0; i < n; ++i) agents_[i].set_strategy(strategies[i]);
  selections_ = all_on;

  ++t_;
  return compute_metrics(t_ - 1, strategies, selections_, smoothed_, grid_);
}

}  // namespace coopgrid
