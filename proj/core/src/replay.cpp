#include "coopgrid/replay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace coopgrid {

namespace {
constexpr double kPriorityFloor = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

PrioritizedReplayBuffer::PrioritizedReplayBuffer(int capacity, int state_dim,
                                                 double alpha)
    : capacity_(capacity), dim_(state_dim), alpha_(alpha) {
  if (capacity < 1) throw std::invalid_argument("replay capacity must be >= 1");
  states_.assign(static_cast<std::size_t>(capacity) * dim_, 0);
  next_states_.assign(static_cast<std::size_t>(capacity) * dim_, 0);
  actions_.assign(capacity, 0);
  utilities_.assign(capacity, 0.0);
  raw_priority_.assign(capacity, 0.0);
  leaves_ = 1;
  while (leaves_ < capacity) leaves_ <<= 1;
  tree_sum_.assign(2 * leaves_, 0.0);
  tree_min_.assign(2 * leaves_, kInf);
  tree_max_.assign(2 * leaves_, 0.0);
}

void PrioritizedReplayBuffer::set_priority(int slot, double raw) {
  raw_priority_[slot] = raw;
  int node = leaves_ + slot;
  tree_sum_[node] = std::pow(raw, alpha_);
  tree_min_[node] = tree_sum_[node];
  tree_max_[node] = raw;
  for (node >>= 1; node >= 1; node >>= 1) {
    tree_sum_[node] = tree_sum_[2 * node] + tree_sum_[2 * node + 1];
    tree_min_[node] = std::min(tree_min_[2 * node], tree_min_[2 * node + 1]);
    tree_max_[node] = std::max(tree_max_[2 * node], tree_max_[2 * node + 1]);
  }
}

void PrioritizedReplayBuffer::add(std::span<const double> state, int action,
                                  double utility,
                                  std::span<const double> next_state) {
  if (static_cast<int>(state.size()) != dim_ ||
      static_cast<int>(next_state.size()) != dim_)
    throw std::invalid_argument("replay: state dimension mismatch");
  const double p = size_ == 0 ? 1.0 : tree_max_[1];
  const int slot = next_;
  for (int k = 0; k < dim_; ++k) {
    states_[static_cast<std::size_t>(slot) * dim_ + k] =
        static_cast<std::uint8_t>(state[k] != 0.0);
    next_states_[static_cast<std::size_t>(slot) * dim_ + k] =
        static_cast<std::uint8_t>(next_state[k] != 0.0);
  }
  actions_[slot] = action;
  utilities_[slot] = utility;
  set_priority(slot, p);
  next_ = (next_ + 1) % capacity_;
  size_ = std::min(size_ + 1, capacity_);
  ++added_;
}

int PrioritizedReplayBuffer::sample_index(double u) const {
  int node = 1;
  while (node < leaves_) {
    const int left = 2 * node;
    if (u < tree_sum_[left]) {
      node = left;
    } else {
      u -= tree_sum_[left];
      node = left + 1;
    }
  }
  int slot = node - leaves_;
  // Floating-point descent can land one past the last occupied leaf.
  return std::min(slot, size_ - 1);
}

PrioritizedReplayBuffer::Batch PrioritizedReplayBuffer::sample(
    int batch, double beta, Rng& rng) const {
  if (size_ == 0) throw std::logic_error("replay: sampling from empty buffer");
  Batch out;
  out.state_dim = dim_;
  out.indices.resize(batch);
  out.weights.resize(batch);
  out.states.resize(static_cast<std::size_t>(batch) * dim_);
  out.next_states.resize(static_cast<std::size_t>(batch) * dim_);
  out.actions.resize(batch);
  out.utilities.resize(batch);

  const double total = tree_sum_[1];
  const double min_scaled = tree_min_[1];
  for (int b = 0; b < batch; ++b) {
    const int i = sample_index(rng.uniform() * total);
    out.indices[b] = i;
    // w_i = (N P_i)^-beta / max_k w_k, and max w corresponds to min P.
    const double scaled = std::pow(raw_priority_[i], alpha_);
    out.weights[b] = std::pow(min_scaled / scaled, beta);
    for (int k = 0; k < dim_; ++k) {
      out.states[static_cast<std::size_t>(b) * dim_ + k] =
          states_[static_cast<std::size_t>(i) * dim_ + k];
      out.next_states[static_cast<std::size_t>(b) * dim_ + k] =
          next_states_[static_cast<std::size_t>(i) * dim_ + k];
    }
    out.actions[b] = actions_[i];
    out.utilities[b] = utilities_[i];
  }
  return out;
}

void PrioritizedReplayBuffer::update_priorities(
    std::span<const int> indices, std::span<const double> td_errors) {
  for (std::size_t k = 0; k < indices.size(); ++k)
    set_priority(indices[k], std::abs(td_errors[k]) + kPriorityFloor);
}

double PrioritizedReplayBuffer::scaled_priority_sum_recomputed() const {
  double s = 0.0;
  for (int i = 0; i < size_; ++i) s += std::pow(raw_priority_[i], alpha_);
  return s;
}

}  // namespace coopgrid
