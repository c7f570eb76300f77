#include "coopgrid/lattice.hpp"

#include <stdexcept>
#include <string>

namespace coopgrid {

LatticeGrid::LatticeGrid(int side) : side_(side) {
  if (side < 3)
    throw std::invalid_argument("lattice side must be >= 3, got " +
                                std::to_string(side));
}

std::array<int, kNeighbourCount> LatticeGrid::neighbours(int agent) const {
  if (agent < 0 || agent >= size())
    throw std::invalid_argument("agent id out of range: " +
                                std::to_string(agent));
  const int r = row(agent);
  const int c = col(agent);
  const int L = side_;
  return {
      ((r - 1 + L) % L) * L + c,  // up
      r * L + (c + 1) % L,        // right
      ((r + 1) % L) * L + c,      // down
      r * L + (c - 1 + L) % L,    // left
  };
}

std::vector<OfferBits> resolve_interactions(
    const std::vector<SelectionAction>& selections, const LatticeGrid& grid) {
  const int n = grid.size();
  std::vector<OfferBits> effective(n);
  for (int i = 0; i < n; ++i) {
    const auto nb = grid.neighbours(i);
    for (int j = 0; j < kNeighbourCount; ++j) {
      const std::uint8_t back = selections[nb[j]].bits[opposite_slot(j)];
      effective[i][j] = static_cast<std::uint8_t>(selections[i].bits[j] & back);
    }
  }
  return effective;
}

double round_payoff(int agent, const std::vector<DilemmaAction>& dilemmas,
                    const std::vector<OfferBits>& effective,
                    const LatticeGrid& grid, const PayoffMatrix& matrix) {
  const auto nb = grid.neighbours(agent);
  double r = 0.0;
  for (int j = 0; j < kNeighbourCount; ++j)
    if (effective[agent][j]) r += matrix.payoff(dilemmas[agent], dilemmas[nb[j]]);
  return r;
}

RoundOutcome play_round(const std::vector<DilemmaAction>& dilemmas,
                        const std::vector<SelectionAction>& selections,
                        const LatticeGrid& grid, const PayoffMatrix& matrix) {
  RoundOutcome out;
  out.dilemmas = dilemmas;
  out.selections = selections;
  out.effective = resolve_interactions(selections, grid);
  const int n = grid.size();
  out.raw_payoffs.resize(n);
  out.interaction_counts.resize(n);
  for (int i = 0; i < n; ++i) {
    out.raw_payoffs[i] = round_payoff(i, dilemmas, out.effective, grid, matrix);
    int count = 0;
    for (int j = 0; j < kNeighbourCount; ++j) count += out.effective[i][j];
    out.interaction_counts[i] = count;
  }
  return out;
}

}  // namespace coopgrid
