#include "coopgrid/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace coopgrid {

double gini(std::vector<double> payoffs) {
  const int n = static_cast<int>(payoffs.size());
  std::sort(payoffs.begin(), payoffs.end());
  double total = 0.0, weighted = 0.0;
  for (int i = 0; i < n; ++i) {
    total += payoffs[i];
    weighted += (2.0 * (i + 1) - n - 1) * payoffs[i];
  }
  if (total == 0.0) return 0.0;
  return weighted / (n * total);
}

double connectivity_ratio(const OfferBits& offers_toward_agent) {
  int c = 0;
  for (auto b : offers_toward_agent) c += b;
  return static_cast<double>(c) / kNeighbourCount;
}

double effective_connection(const OfferBits& own_offers,
                            const OfferBits& offers_toward_agent) {
  int c = 0;
  for (int j = 0; j < kNeighbourCount; ++j)
    c += own_offers[j] & offers_toward_agent[j];
  return static_cast<double>(c) / kNeighbourCount;
}

LinkMetrics link_metrics(const std::vector<DilemmaAction>& dilemmas,
                         const std::vector<SelectionAction>& selections,
                         const LatticeGrid& grid) {
  LinkMetrics m;
  int mutual_cc = 0, mutual_cd = 0, mutual_dd = 0;
  const int n = grid.size();
  for (int i = 0; i < n; ++i) {
    const auto nb = grid.neighbours(i);
    // Each undirected edge visited once via its up/right endpoints.
    for (int j : {kUp, kRight}) {
      const int other = nb[j];
      const bool mutual = selections[i].bits[j] &&
                          selections[other].bits[opposite_slot(j)];
      const bool ic = dilemmas[i] == DilemmaAction::Cooperate;
      const bool oc = dilemmas[other] == DilemmaAction::Cooperate;
      if (ic && oc) {
        ++m.edges_cc;
        mutual_cc += mutual;
      } else if (!ic && !oc) {
        ++m.edges_dd;
        mutual_dd += mutual;
      } else {
        ++m.edges_cd;
        mutual_cd += mutual;
      }
    }
  }
  const int total = m.edges_cc + m.edges_cd + m.edges_dd;
  if (total > 0) {
    m.lp_cc = static_cast<double>(m.edges_cc) / total;
    m.lp_cd = static_cast<double>(m.edges_cd) / total;
    m.lp_dd = static_cast<double>(m.edges_dd) / total;
  }
  if (m.edges_cc > 0) m.lc_cc = static_cast<double>(mutual_cc) / m.edges_cc;
  if (m.edges_cd > 0) m.lc_cd = static_cast<double>(mutual_cd) / m.edges_cd;
  if (m.edges_dd > 0) m.lc_dd = static_cast<double>(mutual_dd) / m.edges_dd;
  return m;
}

namespace {

ClassStats class_stats(std::vector<double> values) {
  ClassStats s;
  s.count = static_cast<int>(values.size());
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  const int n = s.count;
  s.median = n % 2 ? values[n / 2]
                   : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / n;
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = n > 1 ? std::sqrt(sq / (n - 1)) : 0.0;
  return s;
}

}  // namespace

StrategyPayoffStats strategy_payoff_stats(
    const std::vector<double>& final_payoffs,
    const std::vector<DilemmaAction>& dilemmas) {
  StrategyPayoffStats out;
  std::vector<double> coop, def;
  double sum = 0.0;
  for (std::size_t i = 0; i < final_payoffs.size(); ++i) {
    sum += final_payoffs[i];
    (dilemmas[i] == DilemmaAction::Cooperate ? coop : def)
        .push_back(final_payoffs[i]);
  }
  if (!final_payoffs.empty())
    out.population_mean = sum / static_cast<double>(final_payoffs.size());
  if (!coop.empty()) out.cooperators = class_stats(std::move(coop));
  if (!def.empty()) out.defectors = class_stats(std::move(def));
  return out;
}

MetricsRecord compute_metrics(long timestep,
                              const std::vector<DilemmaAction>& dilemmas,
                              const std::vector<SelectionAction>& selections,
                              const std::vector<double>& final_payoffs,
                              const LatticeGrid& grid) {
  MetricsRecord rec;
  rec.timestep = timestep;
  const int n = grid.size();

  int coop = 0;
  double cr_c = 0.0, cr_d = 0.0, ec_c = 0.0, ec_d = 0.0;
  int n_c = 0, n_d = 0;
  for (int i = 0; i < n; ++i) {
    const auto nb = grid.neighbours(i);
    OfferBits toward{};
    for (int j = 0; j < kNeighbourCount; ++j)
      toward[j] = selections[nb[j]].bits[opposite_slot(j)];
    const double cr = connectivity_ratio(toward);
    const double ec = effective_connection(selections[i].bits, toward);
    if (dilemmas[i] == DilemmaAction::Cooperate) {
      ++coop;
      cr_c += cr;
      ec_c += ec;
      ++n_c;
    } else {
      cr_d += cr;
      ec_d += ec;
      ++n_d;
    }
  }
  rec.coop_frac = static_cast<double>(coop) / n;
  if (n_c > 0) {
    rec.cr_c = cr_c / n_c;
    rec.ec_c = ec_c / n_c;
  }
  if (n_d > 0) {
    rec.cr_d = cr_d / n_d;
    rec.ec_d = ec_d / n_d;
  }

  rec.gini = gini(final_payoffs);
  const auto stats = strategy_payoff_stats(final_payoffs, dilemmas);
  rec.pay_mean = stats.population_mean;
  if (stats.cooperators) rec.pay_coop = stats.cooperators->mean;
  if (stats.defectors) rec.pay_def = stats.defectors->mean;

  const auto links = link_metrics(dilemmas, selections, grid);
  rec.lc_cc = links.lc_cc;
  rec.lc_cd = links.lc_cd;
  rec.lc_dd = links.lc_dd;
  rec.lp_cc = links.lp_cc;
  rec.lp_cd = links.lp_cd;
  rec.lp_dd = links.lp_dd;
  return rec;
}

}  // namespace coopgrid
