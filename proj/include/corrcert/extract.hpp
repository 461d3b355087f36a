#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "corrcert/certify.hpp"

namespace corrcert {

/// A witness extracted when the noise correlation is large: function index i
/// (0-based; at most k-3) and a nonzero multi-index sigma with
/// |f_i^(sigma)| > delta and |E[chi^i_sigma f_{i+1} ... f_k]| > delta^2 C^D,
/// where D is the sum of all k degrees.
struct Witness {
  int index = 0;
  MultiIndex sigma;
  double coeff_mag = 0.0;
  double corr_mag = 0.0;
  double delta = 0.0;
  double C = 1.0;
  Degree D = Degree::bottom();
};

/// An intersecting family: indices I (|I| >= 3) with a nonzero sigma(i)
/// each, every covered coordinate hit at least r+1 times, and coefficients
/// above (delta/2k)^{2^k}. The schedule records delta_0 = sqrt(delta) and
/// delta_r = delta_{r-1}^2 / (2k) for inspection.
struct WitnessFamily {
  std::vector<int> indices;             // ascending
  std::map<int, MultiIndex> sigma;      // per index in I
  std::vector<double> schedule;         // delta_0, delta_1, ...
  std::map<int, int> coverage;          // coordinate -> multiplicity
  Complex family_nip;                   // E[prod_{i in I} chi^i_{sigma(i)}]
  double delta = 0.0;
  double C = 1.0;
  Degree D = Degree::bottom();
  int independence_order = 2;           // the declared r
};

/// Telescoping extraction: returns none when
/// |noise correlation| <= 2 delta (k-2) C^D (no claim); otherwise scans
/// i = 1..k-2 in order for |<f_i - E f_i, f_{i+1}, ..., f_k>| > 2 delta C^D,
/// collects A = {sigma != 0 : |f_i^(sigma)| > delta} and returns the sigma
/// maximizing |t(sigma)| (ties broken lexicographically). Requires
/// ||f_i||_2 <= 1 and mu pairwise independent. Throws TheoremViolation if
/// the hypothesis is met but no witness materializes.
std::optional<Witness> extract_witness(std::span<const FourierRepresentation> fs,
                                       const JointDistribution& mu,
                                       std::span<const OrthonormalBasis> bases,
                                       double delta);

/// Diagnostic variant listing one witness per qualifying i.
std::vector<Witness> extract_witness_all(std::span<const FourierRepresentation> fs,
                                         const JointDistribution& mu,
                                         std::span<const OrthonormalBasis> bases,
                                         double delta);

/// Iterated extraction: returns none when |noise correlation| <= C^D delta;
/// otherwise repeats the witness scan on the remaining original functions
/// followed by the accumulated characters until no originals remain.
/// independence_order is the declared r (coverage must reach r+1).
std::optional<WitnessFamily> extract_family(std::span<const FourierRepresentation> fs,
                                            const JointDistribution& mu,
                                            std::span<const OrthonormalBasis> bases,
                                            double delta, int independence_order = 2);

/// Post-hoc soundness checks via nip_bruteforce, independent of the
/// extraction's own arithmetic. fs are the original dense functions.
bool verify_witness(const Witness& w, std::span<const DenseFunction> fs,
                    const JointDistribution& mu, std::span<const OrthonormalBasis> bases,
                    std::int64_t eval_cap = kDefaultNipCap);
bool verify_family(const WitnessFamily& fam, std::span<const DenseFunction> fs,
                   const JointDistribution& mu, std::span<const OrthonormalBasis> bases,
                   std::int64_t eval_cap = kDefaultNipCap);

}  // namespace corrcert
