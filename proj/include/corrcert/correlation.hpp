#pragma once

#include <optional>
#include <span>

#include "corrcert/fourier.hpp"
#include "corrcert/spaces.hpp"

namespace corrcert {

inline constexpr std::int64_t kDefaultMomentCap = 1'000'000;
inline constexpr std::int64_t kDefaultNipCap = 100'000'000;

/// Per-column character moments M[a_1..a_k] = E_mu[prod_i chi_{i,a_i}(x_i)],
/// materialized densely. M[0..0] = 1; under pairwise independence every
/// entry whose nonzero digits number exactly 1 or 2 vanishes.
struct ColumnMomentTensor {
  std::vector<int> alphabet_sizes;
  std::vector<Complex> moments;  // row-major over (a_1, ..., a_k)

  int arity() const { return static_cast<int>(alphabet_sizes.size()); }
  Complex at(std::span<const int> digits) const;
};

ColumnMomentTensor build_column_moment_tensor(const JointDistribution& mu,
                                              std::span<const OrthonormalBasis> bases,
                                              std::int64_t entry_cap = kDefaultMomentCap);

enum class NipMethod { bruteforce, fourier, montecarlo };

struct NipResult {
  Complex value;
  NipMethod method;
  std::optional<double> stderr_estimate;  // montecarlo only
};

/// Exact noisy inner product: sum over all |support(mu)|^n column
/// assignments, weighted by the product of column masses. This is the
/// independent oracle for every other computation path.
NipResult nip_bruteforce(std::span<const DenseFunction> fs, const JointDistribution& mu,
                         std::int64_t eval_cap = kDefaultNipCap);

/// Algebraic route: sum over tuples of stored coefficients of
/// prod_i f_i^(sigma_i) * prod_j M[sigma_1j, ..., sigma_kj], skipping any
/// tuple once a per-coordinate moment factor is exactly zero.
NipResult nip_fourier(std::span<const FourierRepresentation> fs, const ColumnMomentTensor& m);

/// <f_1,...,f_k> - prod_i E[f_i], with E[f_i] = f_i^(0...0).
Complex noise_correlation(std::span<const FourierRepresentation> fs, const ColumnMomentTensor& m);
Complex noise_correlation(std::span<const FourierRepresentation> fs, const JointDistribution& mu,
                          std::span<const OrthonormalBasis> bases);

/// Empirical mean over i.i.d. column-sampled matrices; deterministic in the
/// seed (algorithm recorded as corrcert::kMonteCarloRng).
NipResult nip_montecarlo(std::span<const DenseFunction> fs, const JointDistribution& mu,
                         std::int64_t samples, std::uint64_t seed);

inline constexpr const char* kMonteCarloRng = "mt19937_64";

}  // namespace corrcert
