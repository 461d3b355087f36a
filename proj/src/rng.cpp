#include "corrcert/rng.hpp"

#include <cmath>
#include <numbers>

namespace corrcert {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t state = master;
  std::uint64_t a = splitmix64(state);
  state = a ^ (stream * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL);
  return splitmix64(state);
}

double Rng::u01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::u01_open() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::pair<double, double> Rng::gaussian_pair() {
  double u1 = u01_open();
  double u2 = u01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

std::complex<double> Rng::complex_gaussian() {
  auto [re, im] = gaussian_pair();
  return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

int Rng::below(int n) {
  return static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
}

}  // namespace corrcert
