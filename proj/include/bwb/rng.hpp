#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bwb {

/// SplitMix64 finalizer. Used to spread seeds and derive sub-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of the `index`-th sub-stream of a master seed. The mapping is a fixed
/// mixing function, so the set of streams spawned from (seed, 0..N-1) does not
/// depend on who consumes them or in which order.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index ^ 0xA3C59AC2ED9B8D6FULL));
}

/// Seeded random stream with samplers pinned to fixed algorithms.
///
/// std::mt19937_64 is bit-exact by the standard, but the distribution adaptors
/// in <random> are not, so the samplers here are written out explicitly:
/// identical (seed, call sequence) gives identical draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(derive_stream(seed, index));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe as a log argument.
  double uniform01_open0() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  /// Uniform on the integer set {lo, ..., hi}.
  long uniform_int(long lo, long hi) {
    const auto width = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(static_cast<std::uint64_t>(uniform01() * static_cast<double>(width)) % width);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal via Box-Muller (one value per call, two uniforms).
  double normal() {
    const double u1 = uniform01_open0();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  double exponential() { return -std::log(uniform01_open0()); }

  /// Poisson by Knuth's product-of-uniforms method; exact for the small means
  /// used here (edge weights and multiplier weights, mean <= ~30).
  long poisson(double mean) {
    const double limit = std::exp(-mean);
    long k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01();
    } while (p > limit);
    return k - 1;
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
};

}  // namespace bwb
