#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <utility>

namespace corrcert {

/// RNG algorithm recorded in reports so runs are reproducible across builds.
inline constexpr const char* kRngName = "splitmix64+mt19937_64";

/// splitmix64 step (Steele/Lea/Flood); used to derive per-trial seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Stream seed derived from a master seed by counter. Distinct streams for
/// distinct (master, stream) pairs, deterministic everywhere.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Deterministic RNG wrapper: mt19937_64 with fixed bit-to-double mappings,
/// so results do not depend on the standard library's distribution code.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1): (x >> 11) * 2^-53.
  double u01();

  /// Uniform in (0, 1): ((x >> 11) + 0.5) * 2^-53. Safe for log().
  double u01_open();

  /// Standard normal pair via Box-Muller.
  std::pair<double, double> gaussian_pair();

  /// Standard complex Gaussian (E|z|^2 = 1).
  std::complex<double> complex_gaussian();

  /// Uniform integer in [0, n).
  int below(int n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace corrcert
