#include "coopgrid/agent.hpp"

#include <cmath>
#include <stdexcept>

namespace coopgrid {

AgentVariant parse_variant(const std::string& name) {
  if (name == "dual") return AgentVariant::DualRL;
  if (name == "single") return AgentVariant::SingleRL;
  if (name == "dilemma_only") return AgentVariant::DilemmaOnlyRL;
  if (name == "egt") return AgentVariant::EGT;
  throw std::invalid_argument(
      "unknown variant '" + name + "' (expected dual|single|dilemma_only|egt)");
}

std::string variant_name(AgentVariant v) {
  switch (v) {
    case AgentVariant::DualRL: return "dual";
    case AgentVariant::SingleRL: return "single";
    case AgentVariant::DilemmaOnlyRL: return "dilemma_only";
    case AgentVariant::EGT: return "egt";
  }
  return "?";
}

double fermi_adopt_probability(double r_self, double r_other, double k) {
  if (k <= 0.0)
    throw std::invalid_argument("Fermi noise K must be positive");
  return 1.0 / (1.0 + std::exp((r_self - r_other) / k));
}

int encode_joint_action(DilemmaAction d, const SelectionAction& s) {
  return (d == DilemmaAction::Defect ? 16 : 0) | s.index();
}

std::pair<DilemmaAction, SelectionAction> decode_joint_action(int index) {
  const DilemmaAction d =
      (index & 16) ? DilemmaAction::Defect : DilemmaAction::Cooperate;
  return {d, SelectionAction::from_index(index & 15)};
}

Learner::Learner(int input, int output, int capacity, double per_alpha,
                 double base_lr, Rng& init_rng)
    : net(input, kHiddenUnits, output),
      target(input, kHiddenUnits, output),
      adam(0, base_lr),
      buffer(capacity, input, per_alpha) {
  net.init_uniform(init_rng);
  target.parameters() = net.parameters();
  adam = Adam(net.parameter_count(), base_lr);
}

void Learner::observe(std::span<const double> state, int action,
                      double utility, std::span<const double> next_state,
                      const LearnSettings& settings, double beta,
                      double lr_multiplier, Rng& sample_rng) {
  buffer.add(state, action, utility, next_state);
  if (buffer.total_added() % settings.update_every != 0) return;
  const auto batch = buffer.sample(settings.batch_size, beta, sample_rng);
  auto res = q_loss_and_gradient(net, target, batch, settings.gamma);
  adam.step(net.parameters(), res.grad, lr_multiplier);
  buffer.update_priorities(batch.indices, res.td_errors);
}

Agent::Agent(AgentVariant variant, int window, double alpha,
             int buffer_capacity, double per_alpha, double base_lr,
             std::uint64_t seed, std::uint64_t arena, std::uint64_t id)
    : variant_(variant),
      window_(window),
      memory_(alpha),
      act_dilemma_rng_(Rng::stream(seed, arena, id, StreamPurpose::ActDilemma)),
      act_selection_rng_(
          Rng::stream(seed, arena, id, StreamPurpose::ActSelection)),
      sample_dilemma_rng_(
          Rng::stream(seed, arena, id, StreamPurpose::SampleDilemma)),
      sample_selection_rng_(
          Rng::stream(seed, arena, id, StreamPurpose::SampleSelection)) {
  const int dilemma_in = kDilemmaScalarsPerFrame * window;
  const int selection_in = kSelectionScalarsPerFrame * window;
  Rng dilemma_init = Rng::stream(seed, arena, id, StreamPurpose::InitDilemmaNet);
  Rng selection_init =
      Rng::stream(seed, arena, id, StreamPurpose::InitSelectionNet);
  switch (variant_) {
    case AgentVariant::DualRL:
      dilemma_ = std::make_unique<Learner>(dilemma_in, 2, buffer_capacity,
                                           per_alpha, base_lr, dilemma_init);
      selection_ = std::make_unique<Learner>(selection_in, kSelectionActionCount,
                                             buffer_capacity, per_alpha,
                                             base_lr, selection_init);
      break;
    case AgentVariant::SingleRL:
      joint_ = std::make_unique<Learner>(selection_in, kJointActionCount,
                                         buffer_capacity, per_alpha, base_lr,
                                         dilemma_init);
      break;
    case AgentVariant::DilemmaOnlyRL:
      dilemma_ = std::make_unique<Learner>(dilemma_in, 2, buffer_capacity,
                                           per_alpha, base_lr, dilemma_init);
      break;
    case AgentVariant::EGT:
      break;
  }
  // Initial strategy: independent fair coin.
  Rng coin = Rng::stream(seed, arena, id, StreamPurpose::InitStrategy);
  strategy_ = coin.bernoulli(0.5) ? DilemmaAction::Cooperate
                                  : DilemmaAction::Defect;
}

ActionPair Agent::act(std::span<const double> dilemma_state,
                      std::span<const double> selection_state,
                      double eps_dilemma, double eps_selection) {
  ActionPair out;
  switch (variant_) {
    case AgentVariant::DualRL: {
      const auto qd = dilemma_->net.forward(dilemma_state);
      out.dilemma = static_cast<DilemmaAction>(
          epsilon_greedy(qd, eps_dilemma, act_dilemma_rng_));
      const auto qs = selection_->net.forward(selection_state);
      out.selection = SelectionAction::from_index(
          epsilon_greedy(qs, eps_selection, act_selection_rng_));
      break;
    }
    case AgentVariant::SingleRL: {
      const auto q = joint_->net.forward(selection_state);
      const int a = epsilon_greedy(q, eps_dilemma, act_dilemma_rng_);
      std::tie(out.dilemma, out.selection) = decode_joint_action(a);
      break;
    }
    case AgentVariant::DilemmaOnlyRL: {
      const auto qd = dilemma_->net.forward(dilemma_state);
      out.dilemma = static_cast<DilemmaAction>(
          epsilon_greedy(qd, eps_dilemma, act_dilemma_rng_));
      out.selection = SelectionAction::all_on();
      break;
    }
    case AgentVariant::EGT:
      out.dilemma = strategy_;
      out.selection = SelectionAction::all_on();
      break;
  }
  strategy_ = out.dilemma;
  return out;
}

void Agent::learn(std::span<const double> dilemma_state,
                  std::span<const double> selection_state,
                  const ActionPair& action, double utility,
                  std::span<const double> next_dilemma_state,
                  std::span<const double> next_selection_state,
                  const LearnSettings& settings, double beta,
                  double lr_multiplier) {
  switch (variant_) {
    case AgentVariant::DualRL:
      dilemma_->observe(dilemma_state, static_cast<int>(action.dilemma),
                        utility, next_dilemma_state, settings, beta,
                        lr_multiplier, sample_dilemma_rng_);
      selection_->observe(selection_state, action.selection.index(), utility,
                          next_selection_state, settings, beta, lr_multiplier,
                          sample_selection_rng_);
      break;
    case AgentVariant::SingleRL:
      joint_->observe(selection_state,
                      encode_joint_action(action.dilemma, action.selection),
                      utility, next_selection_state, settings, beta,
                      lr_multiplier, sample_dilemma_rng_);
      break;
    case AgentVariant::DilemmaOnlyRL:
      dilemma_->observe(dilemma_state, static_cast<int>(action.dilemma),
                        utility, next_dilemma_state, settings, beta,
                        lr_multiplier, sample_dilemma_rng_);
      break;
    case AgentVariant::EGT:
      break;
  }
}

void Agent::soft_update_targets(double tau) {
  if (dilemma_) dilemma_->soft_update_target(tau);
  if (selection_) selection_->soft_update_target(tau);
  if (joint_) joint_->soft_update_target(tau);
}

}  // namespace coopgrid
