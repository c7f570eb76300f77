#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coopgrid/rng.hpp"

namespace coopgrid {

// Proportional prioritized replay. Transitions are (state, action index,
// utility, next state); states are binary feature vectors and are stored as
// bytes. A segment tree keeps sum/min of p^alpha and max of raw p, so
// sampling, IS-weight normalization and max-priority bootstrap are all
// O(log capacity).
class PrioritizedReplayBuffer {
 public:
  PrioritizedReplayBuffer(int capacity, int state_dim, double alpha);

  int capacity() const { return capacity_; }
  int state_dim() const { return dim_; }
  int size() const { return size_; }
  long total_added() const { return added_; }

  // New transitions enter at the current max priority (1 on an empty
  // buffer); the oldest slot is evicted once full.
  void add(std::span<const double> state, int action, double utility,
           std::span<const double> next_state);

  struct Batch {
    int state_dim = 0;
    std::vector<int> indices;
    std::vector<double> weights;      // IS weights, normalized to max 1
    std::vector<double> states;       // row-major, batch x state_dim
    std::vector<double> next_states;  // row-major, batch x state_dim
    std::vector<int> actions;
    std::vector<double> utilities;

    int size() const { return static_cast<int>(actions.size()); }
    std::span<const double> state(int i) const {
      return {states.data() + static_cast<std::size_t>(i) * state_dim,
              static_cast<std::size_t>(state_dim)};
    }
    std::span<const double> next_state(int i) const {
      return {next_states.data() + static_cast<std::size_t>(i) * state_dim,
              static_cast<std::size_t>(state_dim)};
    }
  };

  // Independent proportional draws (duplicates possible), P(i) ~ p_i^alpha.
  Batch sample(int batch, double beta, Rng& rng) const;

  // p_i = |td_error| + 1e-6.
  void update_priorities(std::span<const int> indices,
                         std::span<const double> td_errors);

  double priority(int i) const { return raw_priority_[i]; }
  double scaled_priority_sum() const { return tree_sum_[1]; }
  double scaled_priority_sum_recomputed() const;

 private:
  void set_priority(int slot, double raw);
  int sample_index(double u) const;

  int capacity_, dim_;
  double alpha_;
  int size_ = 0;
  int next_ = 0;
  long added_ = 0;

  std::vector<std::uint8_t> states_, next_states_;
  std::vector<int> actions_;
  std::vector<double> utilities_;
  std::vector<double> raw_priority_;

  int leaves_;  // power of two >= capacity
  std::vector<double> tree_sum_, tree_min_, tree_max_;
};

}  // namespace coopgrid
