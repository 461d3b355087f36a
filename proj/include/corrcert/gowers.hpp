#pragma once

#include <span>

#include "corrcert/certify.hpp"
#include "corrcert/fourier.hpp"

namespace corrcert {

inline constexpr std::int64_t kDefaultGowersCap = 100'000'000;

enum class GowersRoute { direct, recursive, cube_nip, u2_closed_form };

struct GowersResult {
  int d = 0;
  double value = 0.0;   // |raw_power|^{1/2^d}
  Complex raw_power;    // the 2^d power before the root; real >= 0 up to fp noise
  GowersRoute route = GowersRoute::direct;
};

// All routes use one conjugation convention, fixed operationally: the factor
// at argument X + sum_{i not in S} Y_i is conjugated iff |S| is even (the
// displayed C^{|S|+1} form). The opposite parity conjugates the integrand
// pointwise and leaves the (real) expectation unchanged; route-agreement
// tests on complex instances pin this down.

/// Exact average over all (X, Y_1..Y_d) in (Z_p^n)^{d+1}.
GowersResult gowers_direct(const DenseFunction& f, int d,
                           std::int64_t eval_cap = kDefaultGowersCap);

/// ||f||_{U^d}^{2^d} = E_Y[ ||f_Y||_{U^{d-1}}^{2^{d-1}} ] with
/// f_Y(X) = f(X+Y) conj(f(X)); base case d = 1 gives |E f|^2.
GowersResult gowers_recursive(const DenseFunction& f, int d,
                              std::int64_t eval_cap = kDefaultGowersCap);

/// U^2 via the standard-basis coefficients: (sum |f^(sigma)|^4)^{1/4}.
GowersResult u2_closed_form(const FourierRepresentation& f);

/// Writes the 2^d power as the noisy inner product of the functions
/// g_S = C^{|S|+1} f over the Gowers-cube column law.
GowersResult gowers_via_cube_nip(const DenseFunction& f, int d,
                                 std::int64_t eval_cap = kDefaultGowersCap);

/// Direct route when it fits the cap, recursive otherwise.
GowersResult gowers_norm(const DenseFunction& f, int d,
                         std::int64_t eval_cap = kDefaultGowersCap);

/// |E[prod f_i(X_i)]| <= min_i ||f_i||_{U^{k-1}} over the length-k AP column
/// law in Z_p^n. Requires ||f_i||_inf <= 1 and k <= p.
BoundCertificate check_gowers_inequality(std::span<const DenseFunction> fs, int p, int n,
                                         double tol = kDefaultCertTol,
                                         std::int64_t eval_cap = kDefaultGowersCap);

}  // namespace corrcert
