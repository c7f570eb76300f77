#include <benchmark/benchmark.h>

#include <vector>

#include "coopgrid/arena.hpp"
#include "coopgrid/config.hpp"
#include "coopgrid/lattice.hpp"
#include "coopgrid/mlp.hpp"
#include "coopgrid/replay.hpp"
#include "coopgrid/rng.hpp"

using namespace coopgrid;

static void BM_MlpForward(benchmark::State& state) {
  const int input = static_cast<int>(state.range(0));
  Rng rng(1);
  Mlp net(input, kHiddenUnits, 16);
  net.init_uniform(rng);
  std::vector<double> x(input);
  for (auto& v : x) v = rng.bernoulli(0.5) ? 1.0 : 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(net.forward(x));
}
BENCHMARK(BM_MlpForward)->Arg(40)->Arg(128);

static void BM_ReplaySample(benchmark::State& state) {
  Rng rng(2);
  PrioritizedReplayBuffer buf(10000, 40, 0.6);
  std::vector<double> s(40);
  for (int i = 0; i < 10000; ++i) {
    for (auto& v : s) v = rng.bernoulli(0.5) ? 1.0 : 0.0;
    buf.add(s, rng.uniform_int(2), rng.uniform_in(-1.0, 1.0), s);
  }
  for (auto _ : state) benchmark::DoNotOptimize(buf.sample(32, 0.7, rng));
}
BENCHMARK(BM_ReplaySample);

static void BM_PlayRound(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  Rng rng(3);
  const LatticeGrid grid(side);
  const PayoffMatrix matrix{1.2};
  std::vector<DilemmaAction> dilemmas(grid.size());
  std::vector<SelectionAction> selections(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    dilemmas[i] = rng.bernoulli(0.5) ? DilemmaAction::Defect
                                     : DilemmaAction::Cooperate;
    for (int s = 0; s < kNeighbourCount; ++s)
      selections[i].bits[s] = rng.bernoulli(0.5);
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(play_round(dilemmas, selections, grid, matrix));
}
BENCHMARK(BM_PlayRound)->Arg(10)->Arg(30);

static void BM_ArenaStep(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.side = static_cast<int>(state.range(0));
  cfg.variant = state.range(1) == 0 ? AgentVariant::DualRL : AgentVariant::EGT;
  cfg.episodes = 1;
  Arena arena(cfg, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(arena.step());
}
BENCHMARK(BM_ArenaStep)
    ->Args({10, 0})
    ->Args({10, 1})
    ->Args({30, 1})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
