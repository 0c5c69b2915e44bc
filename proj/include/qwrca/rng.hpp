#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace qwrca {

/// Deterministic random source. Doubles are built from raw engine bits so
/// streams are reproducible across standard libraries (std distributions
/// are not pinned by the standard).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream derived from (seed, stream index); splitmix64 mixing.
  static Rng split(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return Rng(z ^ (z >> 31));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double angle() { return uniform(0.0, 2 * std::numbers::pi); }

  std::complex<double> unit_phase() {
    const double a = angle();
    return {std::cos(a), std::sin(a)};
  }

  /// Uniform over the closed unit disc.
  std::complex<double> disc_point() {
    return std::sqrt(uniform()) * unit_phase();
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qwrca
