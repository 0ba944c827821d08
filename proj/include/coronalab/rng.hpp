#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>

namespace coronalab {

/// One SplitMix64 scramble step.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the `counter`-th independent stream under `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) noexcept {
  return splitmix64(seed ^ splitmix64(counter + 0x632be59bd9b4e019ULL));
}

/// Platform-stable random source. The engine output is fixed by the standard;
/// the conversions below avoid the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n) {
    if (n == 0) return 0;
    return static_cast<std::size_t>(uniform() * static_cast<double>(n));
  }

  /// Standard normal via Box-Muller (one value per call, the pair partner is discarded).
  double normal() {
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace coronalab
