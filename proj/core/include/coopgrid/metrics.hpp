#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coopgrid/lattice.hpp"

namespace coopgrid {

// Rank formula of the Gini coefficient: sort ascending, rank i from 1,
// G = sum (2i - n - 1) r_i / (n sum r). All-zero input gives 0.
double gini(std::vector<double> payoffs);

// Offers received / 4.
double connectivity_ratio(const OfferBits& offers_toward_agent);

// Mutual offers / 4.
double effective_connection(const OfferBits& own_offers,
                            const OfferBits& offers_toward_agent);

// Undirected lattice edges classified by endpoint strategies (CD and DC
// merged). LC is the fraction of a class's edges with mutual offers and is
// absent for an empty class; LP are class proportions.
struct LinkMetrics {
  std::optional<double> lc_cc, lc_cd, lc_dd;
  double lp_cc = 0.0, lp_cd = 0.0, lp_dd = 0.0;
  int edges_cc = 0, edges_cd = 0, edges_dd = 0;
};

LinkMetrics link_metrics(const std::vector<DilemmaAction>& dilemmas,
                         const std::vector<SelectionAction>& selections,
                         const LatticeGrid& grid);

struct ClassStats {
  double mean = 0.0, median = 0.0, stddev = 0.0, min = 0.0, max = 0.0;
  int count = 0;
};

struct StrategyPayoffStats {
  std::optional<ClassStats> cooperators;
  std::optional<ClassStats> defectors;
  double population_mean = 0.0;
};

StrategyPayoffStats strategy_payoff_stats(
    const std::vector<double>& final_payoffs,
    const std::vector<DilemmaAction>& dilemmas);

// One emitted measurement. Absent values (empty strategy class) stay unset.
struct MetricsRecord {
  long timestep = 0;
  double coop_frac = 0.0;
  double gini = 0.0;
  double pay_mean = 0.0;
  std::optional<double> pay_coop, pay_def;
  std::optional<double> cr_c, cr_d, ec_c, ec_d;
  std::optional<double> lc_cc, lc_cd, lc_dd;
  double lp_cc = 0.0, lp_cd = 0.0, lp_dd = 0.0;
};

MetricsRecord compute_metrics(long timestep,
                              const std::vector<DilemmaAction>& dilemmas,
                              const std::vector<SelectionAction>& selections,
                              const std::vector<double>& final_payoffs,
                              const LatticeGrid& grid);

inline constexpr const char* kMetricsCsvHeader =
    "arena,seed,episode,timestep,coop_frac,gini,pay_mean,pay_coop,pay_def,"
    "cr_c,cr_d,ec_c,ec_d,lc_cc,lc_cd,lc_dd,lp_cc,lp_cd,lp_dd";

inline constexpr int kMetricsColumnCount = 15;  // after the 4 key columns

}  // namespace coopgrid
