#include "coopgrid/memory.hpp"

#include <stdexcept>
#include <string>

namespace coopgrid {

namespace {

constexpr double kMemoryCutoff = 0.01;

// One-hot pair into out[pos], out[pos+1]. Cooperate -> [1,0], Defect -> [0,1].
void put_action(std::vector<double>& out, int pos, DilemmaAction a) {
  out[pos + (a == DilemmaAction::Cooperate ? 0 : 1)] = 1.0;
}

// Offer bit as a one-hot pair: 1 -> [1,0], 0 -> [0,1].
void put_bit(std::vector<double>& out, int pos, std::uint8_t bit) {
  out[pos + (bit ? 0 : 1)] = 1.0;
}

}  // namespace

int memory_length(double alpha) {
  if (alpha < 0.0 || alpha >= 1.0)
    throw std::invalid_argument("payoff memory weight must be in [0,1), got " +
                                std::to_string(alpha));
  if (alpha == 0.0) return 0;
  int n = 1;
  double p = alpha;
  while (p >= kMemoryCutoff) {
    p *= alpha;
    ++n;
  }
  return n;
}

PayoffMemory::PayoffMemory(double alpha)
    : alpha_(alpha), length_(memory_length(alpha)) {}

double PayoffMemory::smoothed(double current) const {
  double num = current;
  double den = 1.0;
  double w = 1.0;
  for (double past : history_) {
    w *= alpha_;
    num += w * past;
    den += w;
  }
  return num / den;
}

void PayoffMemory::push(double raw) {
  if (length_ == 0) return;
  history_.push_front(raw);
  if (static_cast<int>(history_.size()) > length_) history_.pop_back();
}

ExperienceWindow::ExperienceWindow(int window) : window_(window) {
  if (window < 1)
    throw std::invalid_argument("observation window must be >= 1, got " +
                                std::to_string(window));
}

void ExperienceWindow::push(const RoundView& frame) {
  frames_.push_back(frame);
  if (static_cast<int>(frames_.size()) > window_) frames_.pop_front();
}

std::vector<double> encode_dilemma_state(const ExperienceWindow& window) {
  const int w = window.window();
  std::vector<double> out(static_cast<std::size_t>(kDilemmaScalarsPerFrame) * w,
                          0.0);
  const int pad = w - window.size();
  for (int f = 0; f < window.size(); ++f) {
    const RoundView& view = window.frame(f);
    int pos = (pad + f) * kDilemmaScalarsPerFrame;
    put_action(out, pos, view.own_dilemma);
    for (int j = 0; j < kNeighbourCount; ++j)
      put_action(out, pos + 2 * (j + 1), view.neighbour_dilemmas[j]);
  }
  return out;
}

std::vector<double> encode_selection_state(const ExperienceWindow& window) {
  const int w = window.window();
  std::vector<double> out(
      static_cast<std::size_t>(kSelectionScalarsPerFrame) * w, 0.0);
  const int pad = w - window.size();
  for (int f = 0; f < window.size(); ++f) {
    const RoundView& view = window.frame(f);
    for (int j = 0; j < kNeighbourCount; ++j) {
      int pos = (pad + f) * kSelectionScalarsPerFrame + 8 * j;
      put_action(out, pos, view.neighbour_dilemmas[j]);
      put_bit(out, pos + 2, view.own_offers[j]);
      put_bit(out, pos + 4, view.offers_toward_me[j]);
      put_action(out, pos + 6, view.own_dilemma);
    }
  }
  return out;
}

}  // namespace coopgrid
