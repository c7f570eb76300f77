#pragma once

#include <span>
#include <vector>

#include "coopgrid/mlp.hpp"
#include "coopgrid/replay.hpp"
#include "coopgrid/rng.hpp"

namespace coopgrid {

struct QLossResult {
  double loss = 0.0;
  std::vector<double> grad;       // w.r.t. the online network parameters
  std::vector<double> td_errors;  // per sample, for priority updates
};

// Importance-weighted squared TD error over a batch:
//   y_i = u_i + gamma * max_a' target(s'_i, a')
//   loss = mean_i w_i (y_i - Q(s_i, a_i))^2
// Gradients flow only through Q(s_i, a_i); the target term is frozen.
QLossResult q_loss_and_gradient(const Mlp& net, const Mlp& target,
                                const PrioritizedReplayBuffer::Batch& batch,
                                double gamma);

// theta' <- tau * theta + (1 - tau) * theta'
void soft_update(Mlp& target, const Mlp& online, double tau);

// Lowest index wins argmax ties.
int argmax(std::span<const double> values);

// With probability 1-epsilon the greedy action, otherwise uniform.
int epsilon_greedy(std::span<const double> q_values, double epsilon, Rng& rng);

}  // namespace coopgrid
