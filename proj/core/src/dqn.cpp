#include "coopgrid/dqn.hpp"

#include <algorithm>
#include <stdexcept>

namespace coopgrid {

QLossResult q_loss_and_gradient(const Mlp& net, const Mlp& target,
                                const PrioritizedReplayBuffer::Batch& batch,
                                double gamma) {
  const int n = batch.size();
  if (n == 0) throw std::invalid_argument("q_loss_and_gradient: empty batch");
  QLossResult res;
  res.grad.assign(net.parameter_count(), 0.0);
  res.td_errors.resize(n);

  std::vector<double> grad_out(net.output_size(), 0.0);
  for (int i = 0; i < n; ++i) {
    const auto next_q = target.forward(batch.next_state(i));
    const double y =
        batch.utilities[i] + gamma * next_q[argmax(next_q)];
    const auto cache = net.forward_cached(batch.state(i));
    const double q = cache.out[batch.actions[i]];
    const double td = y - q;
    res.td_errors[i] = td;
    res.loss += batch.weights[i] * td * td / n;
    // d(loss)/dq = -2 w td / n, through the taken action only.
    grad_out[batch.actions[i]] = -2.0 * batch.weights[i] * td / n;
    net.backward(cache, grad_out, res.grad);
    grad_out[batch.actions[i]] = 0.0;
  }
  return res;
}

void soft_update(Mlp& target, const Mlp& online, double tau) {
  auto& tp = target.parameters();
  const auto& op = online.parameters();
  if (tp.size() != op.size())
    throw std::invalid_argument("soft_update: architecture mismatch");
  for (std::size_t i = 0; i < tp.size(); ++i)
    tp[i] = tau * op[i] + (1.0 - tau) * tp[i];
}

int argmax(std::span<const double> values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

int epsilon_greedy(std::span<const double> q_values, double epsilon,
                   Rng& rng) {
  if (rng.uniform() < epsilon)
    return rng.uniform_int(static_cast<int>(q_values.size()));
  return argmax(q_values);
}

}  // namespace coopgrid
