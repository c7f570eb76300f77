#pragma once

#include <array>
#include <deque>
#include <vector>

#include "coopgrid/lattice.hpp"

namespace coopgrid {

// Smallest n >= 1 with alpha^n < 0.01; 0 when alpha == 0.
int memory_length(double alpha);

// Exponentially weighted moving average over the last M raw round payoffs.
class PayoffMemory {
 public:
  PayoffMemory() = default;
  explicit PayoffMemory(double alpha);

  double alpha() const { return alpha_; }
  int capacity() const { return length_; }
  int size() const { return static_cast<int>(history_.size()); }

  // R = (r + sum alpha^m r_{t-m}) / (1 + sum alpha^m) over stored history.
  double smoothed(double current) const;

  void push(double raw);

 private:
  double alpha_ = 0.0;
  int length_ = 0;
  std::deque<double> history_;  // newest first
};

// Everything one agent observed in one round.
struct RoundView {
  DilemmaAction own_dilemma = DilemmaAction::Cooperate;
  std::array<DilemmaAction, kNeighbourCount> neighbour_dilemmas{};
  OfferBits own_offers{};
  OfferBits offers_toward_me{};

  friend bool operator==(const RoundView&, const RoundView&) = default;
};

// Ring buffer of the last W rounds; both Q-network inputs are built from it.
class ExperienceWindow {
 public:
  explicit ExperienceWindow(int window = 4);

  int window() const { return window_; }
  int size() const { return static_cast<int>(frames_.size()); }
  const RoundView& frame(int i) const { return frames_[i]; }  // 0 = oldest

  void push(const RoundView& frame);

 private:
  int window_;
  std::deque<RoundView> frames_;  // oldest first
};

inline constexpr int kDilemmaScalarsPerFrame = 10;    // 5 one-hot pairs
inline constexpr int kSelectionScalarsPerFrame = 32;  // 4 slots x 4 pairs

// Flat 10*W vector; per frame the one-hot pairs (self, up, right, down,
// left). Missing warm-up frames are all-zero and come first (oldest first).
std::vector<double> encode_dilemma_state(const ExperienceWindow& window);

// Flat 32*W vector; per frame and neighbour slot the one-hot pairs
// (neighbour dilemma, own offer to them, their offer to me, own dilemma).
std::vector<double> encode_selection_state(const ExperienceWindow& window);

}  // namespace coopgrid
