#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "corrcert/correlation.hpp"
#include "corrcert/fourier.hpp"
#include "corrcert/spaces.hpp"

namespace corrcert {

/// Independent standard complex Gaussian coefficients on every multi-index
/// of weight <= d over Z_q^n, optionally rescaled to ||f||_2 = 1.
/// Deterministic in the seed.
FourierRepresentation generate_random_lowdeg(int q, int n, int d, std::uint64_t seed,
                                             bool unit_norm);

/// Same, but keeping at most max_terms coefficients (chosen deterministically
/// from the index enumeration) so sparse nip stays cheap.
FourierRepresentation generate_random_sparse_lowdeg(int q, int n, int d, int max_terms,
                                                    std::uint64_t seed, bool unit_norm);

/// Random dense function with values in the closed complex unit disk
/// (||f||_inf <= 1), deterministic in the seed.
DenseFunction generate_random_bounded(std::span<const int> alphabet_sizes, std::uint64_t seed);

/// A randomized pairwise-independent column law: one of the standard
/// constructions with relabeled atoms, optionally mixed with the product of
/// its marginals (equal marginals keep pairwise independence).
JointDistribution random_pairwise_independent(std::uint64_t seed);

/// A planted low-degree instance over mu: each f_i carries the character
/// digits[i] at coordinate `coord` plus eta-scaled Gaussian noise of weight
/// <= noise_degree, normalized to ||f_i||_2 = 1. digits are chosen to
/// maximize |M[digits]| over weight-k moment entries, so the noise
/// correlation is bounded away from zero.
struct PlantedInstance {
  std::vector<FourierRepresentation> fs;
  MultiIndex planted_digits;   // per function, the digit planted at coord
  int coord = 0;
  double noise_correlation_mag = 0.0;
  double delta_witness = 0.0;  // satisfies |nc| > 2*delta*(k-2)*C^D
  double delta_family = 0.0;   // satisfies |nc| > C^D*delta
};

PlantedInstance make_planted_instance(const JointDistribution& mu,
                                      std::span<const OrthonormalBasis> bases,
                                      int n, int coord, int noise_degree, double eta,
                                      std::uint64_t seed);

}  // namespace corrcert
