#include "coopgrid/utility.hpp"

namespace coopgrid {

PopulationActionAverages population_averages(
    const std::vector<double>& final_payoffs,
    const std::vector<DilemmaAction>& dilemmas) {
  PopulationActionAverages avg;
  double sum_c = 0.0, sum_d = 0.0;
  for (std::size_t i = 0; i < final_payoffs.size(); ++i) {
    if (dilemmas[i] == DilemmaAction::Cooperate) {
      sum_c += final_payoffs[i];
      ++avg.count_cooperate;
    } else {
      sum_d += final_payoffs[i];
      ++avg.count_defect;
    }
  }
  if (avg.count_cooperate > 0) avg.mean_cooperate = sum_c / avg.count_cooperate;
  if (avg.count_defect > 0) avg.mean_defect = sum_d / avg.count_defect;
  return avg;
}

double counterfactual_utility(
    double own_final_payoff, DilemmaAction own_action,
    const std::array<DilemmaAction, kNeighbourCount>& neighbour_actions,
    const PopulationActionAverages& averages) {
  int same = 0;
  for (DilemmaAction a : neighbour_actions)
    if (a == own_action) ++same;
  const int counter = kNeighbourCount - same;
  // With no counterfactual neighbours the quotient reduces algebraically to
  // the agent's own payoff; return it directly so the identity is exact.
  if (counter == 0) return own_final_payoff;
  const DilemmaAction alt = other_action(own_action);
  return ((same + 1) * own_final_payoff - counter * averages.mean(alt)) /
         (kNeighbourCount + 1);
}

}  // namespace coopgrid
