#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coopgrid/dqn.hpp"
#include "coopgrid/lattice.hpp"
#include "coopgrid/memory.hpp"
#include "coopgrid/mlp.hpp"
#include "coopgrid/optim.hpp"
#include "coopgrid/replay.hpp"
#include "coopgrid/rng.hpp"

namespace coopgrid {

enum class AgentVariant { DualRL, SingleRL, DilemmaOnlyRL, EGT };

AgentVariant parse_variant(const std::string& name);
std::string variant_name(AgentVariant v);

// Probability that self adopts other's strategy under Fermi imitation;
// higher payoffs spread.
double fermi_adopt_probability(double r_self, double r_other, double k);

// Single-net joint action layout: bit 4 = dilemma (0 = Cooperate),
// bits 0-3 = selection slots.
int encode_joint_action(DilemmaAction d, const SelectionAction& s);
std::pair<DilemmaAction, SelectionAction> decode_joint_action(int index);

struct LearnSettings {
  int batch_size = 32;
  int update_every = 5;
  double gamma = 0.99;
};

// One DQN head: online and target networks, optimizer and replay buffer.
struct Learner {
  Mlp net;
  Mlp target;
  Adam adam;
  PrioritizedReplayBuffer buffer;

  Learner(int input, int output, int capacity, double per_alpha,
          double base_lr, Rng& init_rng);

  // Stores the transition; every settings.update_every additions runs one
  // gradient step (sample, backprop, Adam, priority refresh).
  void observe(std::span<const double> state, int action, double utility,
               std::span<const double> next_state,
               const LearnSettings& settings, double beta, double lr_multiplier,
               Rng& sample_rng);

  void soft_update_target(double tau) { soft_update(target, net, tau); }
};

struct ActionPair {
  DilemmaAction dilemma = DilemmaAction::Cooperate;
  SelectionAction selection = SelectionAction::all_on();
};

// One lattice inhabitant: its policy variant, learners (when RL), the
// experience window feeding the networks, and the payoff memory.
class Agent {
 public:
  Agent(AgentVariant variant, int window, double alpha, int buffer_capacity,
        double per_alpha, double base_lr, std::uint64_t seed,
        std::uint64_t arena, std::uint64_t id);

  AgentVariant variant() const { return variant_; }
  DilemmaAction strategy() const { return strategy_; }
  void set_strategy(DilemmaAction s) { strategy_ = s; }

  ExperienceWindow& window() { return window_; }
  const ExperienceWindow& window() const { return window_; }
  PayoffMemory& payoff_memory() { return memory_; }

  ActionPair act(std::span<const double> dilemma_state,
                 std::span<const double> selection_state, double eps_dilemma,
                 double eps_selection);

  // Stores the shared utility into every buffer the variant owns and runs
  // the cadence-gated learning step(s). EGT is a no-op.
  void learn(std::span<const double> dilemma_state,
             std::span<const double> selection_state, const ActionPair& action,
             double utility, std::span<const double> next_dilemma_state,
             std::span<const double> next_selection_state,
             const LearnSettings& settings, double beta, double lr_multiplier);

  void soft_update_targets(double tau);

  const Learner* dilemma_learner() const { return dilemma_.get(); }
  const Learner* selection_learner() const { return selection_.get(); }
  const Learner* joint_learner() const { return joint_.get(); }

 private:
  AgentVariant variant_;
  DilemmaAction strategy_ = DilemmaAction::Cooperate;
  ExperienceWindow window_;
  PayoffMemory memory_;
  std::unique_ptr<Learner> dilemma_;
  std::unique_ptr<Learner> selection_;
  std::unique_ptr<Learner> joint_;
  Rng act_dilemma_rng_;
  Rng act_selection_rng_;
  Rng sample_dilemma_rng_;
  Rng sample_selection_rng_;
};

}  // namespace coopgrid
