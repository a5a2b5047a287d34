#pragma once

// Portable deterministic randomness for the corpus generator.
//
// The engine is std::mt19937_64, whose update rule is fixed by the C++
// standard. The standard distributions are implementation-defined, so the
// conversions to uniform reals, integers and normals are done here:
//   uniform01  = (next() >> 11) * 2^-53
//   uniform_int(lo, hi) = lo + floor(uniform01 * (hi - lo + 1))
//   normal     = Box-Muller on two uniform01 draws (cosine branch only)
// Per-scene seeds are splitmix64(seed ^ splitmix64(index + 1)).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace plategate::synth {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(seed ^ splitmix64(index + 1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Inclusive on both ends.
  int uniform_int(int lo, int hi) {
    const double span = static_cast<double>(hi) - lo + 1.0;
    const int v = lo + static_cast<int>(std::floor(uniform01() * span));
    return v > hi ? hi : v;
  }

  bool chance(double p) { return uniform01() < p; }

  double normal(double mean, double sigma) {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return mean + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace plategate::synth
