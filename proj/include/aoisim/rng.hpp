#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace aoisim {

/// Seeded generator with portable uniform/normal draws. All stochastic code
/// in the library draws through this wrapper so that a run is reproducible
/// from its seed alone, independent of the standard library's distribution
/// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n) {
    // rejection sampling to avoid modulo bias
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via Box-Muller (pairs cached).
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

  /// Circularly-symmetric complex Gaussian, zero mean, unit variance
  /// (real and imaginary parts each have variance 1/2).
  std::complex<double> complex_normal() {
    const double s = 0.70710678118654752440;
    return {s * normal(), s * normal()};
  }

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Derives an independent stream seed from a master seed and a label, so
/// that the channel process, arrival process, agent initialization etc. of
/// one run never share a generator.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view stream) {
  // FNV-1a over the label, then a splitmix64 finalizer
  std::uint64_t h = 1469598103934665603ull;
  for (char c : stream) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 1099511628211ull;
  }
  std::uint64_t z = master + 0x9e3779b97f4a7c15ull + h;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace aoisim
