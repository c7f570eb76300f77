#pragma once

#include <array>
#include <vector>

#include "coopgrid/lattice.hpp"

namespace coopgrid {

// Population mean of final payoffs per dilemma action; an empty class
// records mean 0 with count 0.
struct PopulationActionAverages {
  double mean_cooperate = 0.0;
  double mean_defect = 0.0;
  int count_cooperate = 0;
  int count_defect = 0;

  double mean(DilemmaAction a) const {
    return a == DilemmaAction::Cooperate ? mean_cooperate : mean_defect;
  }
  int count(DilemmaAction a) const {
    return a == DilemmaAction::Cooperate ? count_cooperate : count_defect;
  }
};

PopulationActionAverages population_averages(
    const std::vector<double>& final_payoffs,
    const std::vector<DilemmaAction>& dilemmas);

// Counterfactual utility: compares the realized payoff against the
// population average of the action the agent did not take, weighted by
// neighbourhood action counts.
//   U = [(w(a)+1) R - w(~a) Rbar(~a)] / (w(C) + w(D) + 1)
double counterfactual_utility(
    double own_final_payoff, DilemmaAction own_action,
    const std::array<DilemmaAction, kNeighbourCount>& neighbour_actions,
    const PopulationActionAverages& averages);

}  // namespace coopgrid
