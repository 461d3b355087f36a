#pragma once

#include <array>
#include <span>
#include <string>

#include "corrcert/correlation.hpp"
#include "corrcert/fourier.hpp"
#include "corrcert/spaces.hpp"

namespace corrcert {

inline constexpr double kDefaultCertTol = 1e-9;

/// Constants entering the main bound: C = (k sqrt((q-1)/alpha))^3, or
/// (k sqrt(q-1))^3 when the column law is balanced and every basis is the
/// standard complex one.
struct BoundConstants {
  int k = 0;
  int q = 0;          // max component alphabet size
  double alpha = 1.0; // min over marginals of min_atom_alpha
  bool balanced = false;
  double C = 1.0;
  Degree D = Degree::bottom();
  double delta = 0.0;
};

/// One certified inequality: holds iff lhs <= rhs + tol.
struct BoundCertificate {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  double slack = 0.0;  // rhs - lhs
  BoundConstants constants;
  double tol = kDefaultCertTol;
};

BoundCertificate make_certificate(std::string name, double lhs, double rhs,
                                  BoundConstants constants, double tol);

/// Sum of the k-2 smallest degrees; the empty sum (k = 2) is 0; any bottom
/// among the k-2 smallest yields bottom. Requires k >= 2.
Degree deg_minus_2(std::span<const Degree> degrees);

/// The theorem constant. balanced selects (k sqrt(q-1))^3, valid only with a
/// unimodular (standard complex) basis.
double theorem_constant(int k, int q, double alpha, bool balanced);

/// C^D with C^bottom = 0.
double pow_degree(double c, const Degree& d);

/// Constants for mu and the given per-component bases (q = max alphabet,
/// alpha = min marginal alpha, balanced iff all marginals uniform and all
/// bases standard). D and delta are left for the caller.
BoundConstants constants_for(const JointDistribution& mu, std::span<const OrthonormalBasis> bases);

/// |<f_1..f_k>| <= C^D * delta * prod_{i>=2} ||f_i||_2, with
/// delta = max_sigma |f_1^(sigma)| and D the sum of the k-2 smallest
/// degrees. Requires mu pairwise independent.
BoundCertificate certify_main(std::span<const FourierRepresentation> fs,
                              const JointDistribution& mu,
                              std::span<const OrthonormalBasis> bases,
                              double tol = kDefaultCertTol);

/// |<f_1..f_k> - prod E[f_i]| <= delta (k-2) C^D with
/// delta = max_{i <= k-2} max_{sigma != 0} |f_i^(sigma)|. Requires
/// ||f_i||_2 <= 1 and mu pairwise independent.
BoundCertificate certify_correlation(std::span<const FourierRepresentation> fs,
                                     const JointDistribution& mu,
                                     std::span<const OrthonormalBasis> bases,
                                     double tol = kDefaultCertTol);

/// k = 3 Roth-type bound: |<f_1,f_2,f_3>| <= min_i max_sigma |f_i^(sigma)|.
/// Requires ||f_i||_2 <= 1 and mu pairwise independent.
BoundCertificate certify_roth(std::span<const FourierRepresentation> fs,
                              const JointDistribution& mu,
                              std::span<const OrthonormalBasis> bases,
                              double tol = kDefaultCertTol);

/// Truncation bound: with eps = max_i ||f_i^{>d}||_k,
/// |<f_1..f_k> - <f_1^{<=d}..f_k^{<=d}>| <= k eps (1+eps)^{k-1}.
/// Requires ||f_i||_k <= 1.
BoundCertificate certify_holder_truncation(std::span<const DenseFunction> fs,
                                           const JointDistribution& mu,
                                           std::span<const OrthonormalBasis> bases,
                                           int d, double tol = kDefaultCertTol);

/// Weak inverse Gowers bound over Z_p^n with the standard basis: if
/// ||f||_{U^k} > eps then some |f^(sigma)| >= (eps/(2^k sqrt(p-1))^{3d})^{2^k}.
/// The certificate's lhs is that threshold (0 when the norm is <= eps and
/// the claim is vacuous), its rhs is max_sigma |f^(sigma)|, and
/// constants.delta records ||f||_{U^k}. Requires deg(f) <= d, ||f||_2 = 1.
BoundCertificate certify_inverse_gowers(const DenseFunction& f, int p, int d, int k,
                                        double eps, double tol = kDefaultCertTol,
                                        std::int64_t eval_cap = kDefaultNipCap);

/// Arithmetic-progression distinguisher report over Z_p^n (standard basis).
struct ApDistinguisherReport {
  int p = 0, k = 0, n = 0, d = 0;
  double epsilon = 0.0;
  double delta_gap = 0.0;  // |E_AP[prod f_i] - prod E[f_i]|
  bool triggered = false;  // delta_gap > epsilon
  double uniformity_threshold = 0.0;          // eps/(k sqrt(p-1))^{3dk}
  std::vector<double> max_coefficients;       // per function, over all sigma
  bool none_uniform = false;                  // every max > threshold
  double triple_threshold = 0.0;              // (eps/(k (k sqrt(p-1))^{3dk}))^{2^k}
  bool triple_found = false;
  std::array<int, 3> triple_indices{};        // i(1) < i(2) < i(3), 0-based
  std::array<MultiIndex, 3> triple_sigmas{};
  int shared_coordinate = -1;
  bool theorem_violation = false;  // triggered but a claim failed
};

/// Computes the gap exactly and, when it exceeds eps, verifies by exhaustive
/// coefficient search that no f_i is uniform at the displayed threshold and
/// that an intersecting coefficient triple exists at the 2^k-power threshold.
/// Requires deg(f_i) <= d and ||f_i||_2 <= 1.
ApDistinguisherReport certify_ap_distinguisher(std::span<const DenseFunction> fs,
                                               int p, int d, double eps,
                                               double tol = kDefaultCertTol);

}  // namespace corrcert
