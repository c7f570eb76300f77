#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace coopgrid {

enum class DilemmaAction : std::uint8_t { Cooperate = 0, Defect = 1 };

inline DilemmaAction other_action(DilemmaAction a) {
  return a == DilemmaAction::Cooperate ? DilemmaAction::Defect
                                       : DilemmaAction::Cooperate;
}

// Fixed neighbour slot order used everywhere: selection bits, state
// encodings and metrics all index neighbours the same way.
enum NeighbourSlot : int { kUp = 0, kRight = 1, kDown = 2, kLeft = 3 };
inline constexpr int kNeighbourCount = 4;

// The slot under which agent i appears in its slot-j neighbour's list.
inline constexpr int opposite_slot(int slot) { return (slot + 2) % 4; }

using OfferBits = std::array<std::uint8_t, kNeighbourCount>;

// 4-bit interaction offer, one bit per neighbour slot.
struct SelectionAction {
  OfferBits bits{1, 1, 1, 1};

  int index() const {
    int v = 0;
    for (int j = 0; j < kNeighbourCount; ++j) v |= bits[j] << j;
    return v;
  }

  static SelectionAction from_index(int idx) {
    SelectionAction a;
    for (int j = 0; j < kNeighbourCount; ++j)
      a.bits[j] = static_cast<std::uint8_t>((idx >> j) & 1);
    return a;
  }

  static SelectionAction all_on() { return SelectionAction{}; }

  friend bool operator==(const SelectionAction&,
                         const SelectionAction&) = default;
};

inline constexpr int kSelectionActionCount = 16;  // 2^4
inline constexpr int kJointActionCount = 32;      // 2^5, single-net variant

// Weak prisoner's dilemma: R=1, S=P=0, T=b with 1 <= b <= 2.
struct PayoffMatrix {
  double b = 1.2;

  double payoff(DilemmaAction self, DilemmaAction opponent) const {
    if (opponent != DilemmaAction::Cooperate) return 0.0;
    return self == DilemmaAction::Cooperate ? 1.0 : b;
  }
};

// Periodic L x L lattice with von Neumann neighbourhoods.
class LatticeGrid {
 public:
  explicit LatticeGrid(int side);

  int side() const { return side_; }
  int size() const { return side_ * side_; }
  int row(int agent) const { return agent / side_; }
  int col(int agent) const { return agent % side_; }

  // Neighbours in slot order (up, right, down, left), with wraparound.
  std::array<int, kNeighbourCount> neighbours(int agent) const;

 private:
  int side_;
};

struct RoundOutcome {
  std::vector<DilemmaAction> dilemmas;
  std::vector<SelectionAction> selections;
  std::vector<OfferBits> effective;  // mutual-offer flags per slot
  std::vector<double> raw_payoffs;
  std::vector<int> interaction_counts;
};

// effective[i][j] = selections[i].bits[j] AND (neighbour j offered back).
std::vector<OfferBits> resolve_interactions(
    const std::vector<SelectionAction>& selections, const LatticeGrid& grid);

// Raw round payoff r_i: sum of matrix payoffs over effective neighbours.
double round_payoff(int agent, const std::vector<DilemmaAction>& dilemmas,
                    const std::vector<OfferBits>& effective,
                    const LatticeGrid& grid, const PayoffMatrix& matrix);

RoundOutcome play_round(const std::vector<DilemmaAction>& dilemmas,
                        const std::vector<SelectionAction>& selections,
                        const LatticeGrid& grid, const PayoffMatrix& matrix);

}  // namespace coopgrid
