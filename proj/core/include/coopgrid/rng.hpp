#pragma once

#include <cstdint>
#include <random>

namespace coopgrid {

// splitmix64 finalizer, used to derive well-separated stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// What a sub-stream is used for. Each (seed, arena, agent, purpose) tuple
// gets its own generator so adding instrumentation never perturbs runs.
enum class StreamPurpose : std::uint64_t {
  InitStrategy = 1,
  InitDilemmaNet,
  InitSelectionNet,
  ActDilemma,
  ActSelection,
  SampleDilemma,
  SampleSelection,
  EgtUpdate,
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t arena,
                    std::uint64_t agent, StreamPurpose purpose) {
    std::uint64_t s = mix64(seed);
    s = mix64(s ^ mix64(arena + 0x9e37));
    s = mix64(s ^ mix64(agent + 0x79b9));
    s = mix64(s ^ mix64(static_cast<std::uint64_t>(purpose) + 0x7f4a));
    return Rng(s);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  int uniform_int(int n) {
    int v = static_cast<int>(uniform() * n);
    return v < n ? v : n - 1;
  }

  double uniform_in(double lo, double hi) {
    return lo + (hi - lo) * uniform();
  }

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace coopgrid
