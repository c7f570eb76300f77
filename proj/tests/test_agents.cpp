#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "coopgrid/agent.hpp"
#include "coopgrid/arena.hpp"
#include "coopgrid/memory.hpp"

using namespace coopgrid;

namespace {

Agent make_agent(AgentVariant v, std::uint64_t id = 0) {
  return Agent(v, /*window=*/2, /*alpha=*/0.6, /*buffer_capacity=*/64,
               /*per_alpha=*/0.6, /*base_lr=*/1e-3, /*seed=*/7, /*arena=*/0,
               id);
}

}  // namespace

TEST_CASE("fermi adoption probability") {
  CHECK(fermi_adopt_probability(1.0, 1.0, 0.1) == 0.5);
  // Other earns 0.1 more at k = 0.1: 1/(1+e^-1).
  CHECK(fermi_adopt_probability(1.0, 1.1, 0.1) ==
        doctest::Approx(1.0 / (1.0 + std::exp(-1.0))).epsilon(1e-12));
  CHECK(fermi_adopt_probability(1.0, 1.1, 0.1) ==
        doctest::Approx(0.7310585786).epsilon(1e-9));

  // Swapping the two payoffs complements the probability.
  for (double d : {0.0, 0.3, 1.7}) {
    CHECK(fermi_adopt_probability(2.0, 2.0 + d, 0.1) +
              fermi_adopt_probability(2.0 + d, 2.0, 0.1) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  // Small k approaches a step function around equality.
  CHECK(fermi_adopt_probability(0.0, 1.0, 1e-6) == doctest::Approx(1.0));
  CHECK(fermi_adopt_probability(1.0, 0.0, 1e-6) ==
        doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS(fermi_adopt_probability(1.0, 1.0, 0.0));
  CHECK_THROWS(fermi_adopt_probability(1.0, 1.0, -0.1));
}

TEST_CASE("joint action encoding") {
  // Bit 4 carries the dilemma (0 = cooperate), bits 0-3 the selection.
  for (int i = 0; i < kJointActionCount; ++i) {
    const auto [d, s] = decode_joint_action(i);
    CHECK(encode_joint_action(d, s) == i);
    CHECK((d == DilemmaAction::Defect) == ((i & 16) != 0));
    CHECK(s.index() == (i & 15));
  }
  const auto [d9, s9] = decode_joint_action(9);
  CHECK(d9 == DilemmaAction::Cooperate);
  CHECK(s9.bits == OfferBits{1, 0, 0, 1});
}

TEST_CASE("variant names round-trip") {
  for (auto v : {AgentVariant::DualRL, AgentVariant::SingleRL,
                 AgentVariant::DilemmaOnlyRL, AgentVariant::EGT}) {
    CHECK(parse_variant(variant_name(v)) == v);
  }
  CHECK(parse_variant("dual") == AgentVariant::DualRL);
  CHECK_THROWS(parse_variant("nonsense"));
}

TEST_CASE("learner ownership per variant") {
  const auto dual = make_agent(AgentVariant::DualRL);
  CHECK(dual.dilemma_learner() != nullptr);
  CHECK(dual.selection_learner() != nullptr);
  CHECK(dual.joint_learner() == nullptr);

  const auto single = make_agent(AgentVariant::SingleRL);
  CHECK(single.joint_learner() != nullptr);
  CHECK(single.dilemma_learner() == nullptr);

  const auto dilemma_only = make_agent(AgentVariant::DilemmaOnlyRL);
  CHECK(dilemma_only.dilemma_learner() != nullptr);
  CHECK(dilemma_only.selection_learner() == nullptr);

  const auto egt = make_agent(AgentVariant::EGT);
  CHECK(egt.dilemma_learner() == nullptr);
  CHECK(egt.selection_learner() == nullptr);
  CHECK(egt.joint_learner() == nullptr);
}

TEST_CASE("dilemma-only agents always offer to everyone") {
  auto agent = make_agent(AgentVariant::DilemmaOnlyRL);
  const std::vector<double> sd(2 * kDilemmaScalarsPerFrame, 0.0);
  const std::vector<double> ss(2 * kSelectionScalarsPerFrame, 0.0);
  for (int i = 0; i < 50; ++i) {
    const auto a = agent.act(sd, ss, 0.5, 0.5);
    CHECK(a.selection.bits == OfferBits{1, 1, 1, 1});
  }
}

TEST_CASE("egt act echoes the strategy and offers to everyone") {
  auto agent = make_agent(AgentVariant::EGT);
  const std::vector<double> sd(2 * kDilemmaScalarsPerFrame, 0.0);
  const std::vector<double> ss(2 * kSelectionScalarsPerFrame, 0.0);
  for (auto s : {DilemmaAction::Defect, DilemmaAction::Cooperate}) {
    agent.set_strategy(s);
    const auto a = agent.act(sd, ss, 1.0, 1.0);  // epsilon must not matter
    CHECK(a.dilemma == s);
    CHECK(a.selection.bits == OfferBits{1, 1, 1, 1});
  }
}

TEST_CASE("acting updates the exposed strategy") {
  auto agent = make_agent(AgentVariant::DualRL);
  const std::vector<double> sd(2 * kDilemmaScalarsPerFrame, 0.0);
  const std::vector<double> ss(2 * kSelectionScalarsPerFrame, 0.0);
  for (int i = 0; i < 20; ++i) {
    const auto a = agent.act(sd, ss, 1.0, 1.0);
    CHECK(agent.strategy() == a.dilemma);
  }
}

TEST_CASE("initial strategies are seed-determined and mixed") {
  int defectors = 0;
  for (std::uint64_t id = 0; id < 200; ++id) {
    const auto a = make_agent(AgentVariant::DualRL, id);
    const auto b = make_agent(AgentVariant::DualRL, id);
    CHECK(a.strategy() == b.strategy());
    defectors += a.strategy() == DilemmaAction::Defect;
  }
  // Fair coin over 200 draws; 3 sigma is about 21.
  CHECK(defectors > 100 - 22);
  CHECK(defectors < 100 + 22);
}

TEST_CASE("egt monte carlo sweep") {
  const LatticeGrid grid(4);
  Rng rng(99);

  SUBCASE("uniform populations are absorbing") {
    for (auto s : {DilemmaAction::Cooperate, DilemmaAction::Defect}) {
      std::vector<DilemmaAction> strategies(grid.size(), s);
      std::vector<double> payoffs(grid.size(), 1.0);
      for (int sweep = 0; sweep < 10; ++sweep)
        egt_mc_update(strategies, payoffs, grid, 0.1, rng);
      for (auto got : strategies) CHECK(got == s);
    }
  }

  SUBCASE("a dominant payoff takes over at tiny temperature") {
    // One defector earning far more than everyone else; with k tiny every
    // comparison against it is adopted, so defection spreads.
    std::vector<DilemmaAction> strategies(grid.size(),
                                          DilemmaAction::Cooperate);
    strategies[5] = DilemmaAction::Defect;
    std::vector<double> payoffs(grid.size(), 0.0);
    payoffs[5] = 100.0;
    int defectors_before = 1;
    egt_mc_update(strategies, payoffs, grid, 1e-9, rng);
    int defectors_after = 0;
    for (auto s : strategies)
      defectors_after += s == DilemmaAction::Defect;
    CHECK(defectors_after >= defectors_before);
    // Agent 5 itself never flips: every neighbour pays less.
    CHECK(strategies[5] == DilemmaAction::Defect);
  }

  SUBCASE("equal payoffs mix toward half-half") {
    std::vector<DilemmaAction> strategies(grid.size(),
                                          DilemmaAction::Cooperate);
    for (int i = 0; i < grid.size(); i += 2)
      strategies[i] = DilemmaAction::Defect;
    const std::vector<double> payoffs(grid.size(), 1.0);
    double coop_sum = 0.0;
    const int sweeps = 400;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
      egt_mc_update(strategies, payoffs, grid, 0.1, rng);
      int c = 0;
      for (auto s : strategies) c += s == DilemmaAction::Cooperate;
      coop_sum += static_cast<double>(c) / grid.size();
      // Reseed a mixed state whenever drift absorbs the population.
      if (c == 0 || c == grid.size())
        for (int i = 0; i < grid.size(); i += 2)
          strategies[i] = other_action(strategies[i]);
    }
    CHECK(coop_sum / sweeps > 0.25);
    CHECK(coop_sum / sweeps < 0.75);
  }
}

TEST_CASE("argmax is invariant to positive affine shifts") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> q(16);
    for (auto& v : q) v = rng.uniform_in(-2.0, 2.0);
    const int base = argmax(q);
    std::vector<double> shifted(q.size());
    const double a = rng.uniform_in(0.1, 3.0), b = rng.uniform_in(-5.0, 5.0);
    for (std::size_t i = 0; i < q.size(); ++i) shifted[i] = a * q[i] + b;
    CHECK(argmax(shifted) == base);
  }
}
