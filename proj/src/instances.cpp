#include "corrcert/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "corrcert/certify.hpp"
#include "corrcert/rng.hpp"

namespace corrcert {

namespace {

FourierRepresentation random_lowdeg_impl(int q, int n, int d, int max_terms,
                                         std::uint64_t seed, bool unit_norm) {
  if (q < 1 || n < 0) throw std::invalid_argument("generate_random_lowdeg: bad q or n");
  if (d > n) throw std::invalid_argument("generate_random_lowdeg: need d <= n");
  std::vector<int> sizes(n, q);
  FourierRepresentation rep(sizes);
  Rng rng(seed);
  auto indices = multi_indices_up_to_weight(sizes, d);
  int kept = 0;
  for (const auto& sigma : indices) {
    if (max_terms >= 0 && kept >= max_terms) break;
    rep.set_coefficient(sigma, rng.complex_gaussian(), 0.0);
    ++kept;
  }
  if (unit_norm) {
    double norm = rep.l2_norm();
    if (norm == 0.0) throw std::logic_error("generate_random_lowdeg: zero draw");
    rep = rep.scaled(Complex(1.0 / norm, 0.0));
  }
  return rep;
}

}  // namespace

FourierRepresentation generate_random_lowdeg(int q, int n, int d, std::uint64_t seed,
                                             bool unit_norm) {
  return random_lowdeg_impl(q, n, d, -1, seed, unit_norm);
}

FourierRepresentation generate_random_sparse_lowdeg(int q, int n, int d, int max_terms,
                                                    std::uint64_t seed, bool unit_norm) {
  if (max_terms < 1) throw std::invalid_argument("generate_random_sparse_lowdeg: need max_terms >= 1");
  return random_lowdeg_impl(q, n, d, max_terms, seed, unit_norm);
}

DenseFunction generate_random_bounded(std::span<const int> alphabet_sizes, std::uint64_t seed) {
  DenseFunction f = DenseFunction::zeros(std::vector<int>(alphabet_sizes.begin(), alphabet_sizes.end()));
  Rng rng(seed);
  for (std::int64_t i = 0; i < f.size(); ++i) {
    double r = std::sqrt(rng.u01());
    double theta = 2.0 * std::numbers::pi * rng.u01();
    f[i] = Complex(r * std::cos(theta), r * std::sin(theta));
  }
  return f;
}

namespace {

// Relabel the atoms of each coordinate by a permutation. Pairwise
// independence and marginal uniformity are invariant under relabeling.
JointDistribution permute_atoms(const JointDistribution& mu, Rng& rng) {
  std::vector<std::vector<int>> perms;
  for (int i = 0; i < mu.arity(); ++i) {
    int q = mu.components()[i].size();
    std::vector<int> perm(q);
    for (int a = 0; a < q; ++a) perm[a] = a;
    for (int a = q - 1; a > 0; --a) std::swap(perm[a], perm[rng.below(a + 1)]);
    perms.push_back(std::move(perm));
  }
  std::vector<std::pair<std::vector<int>, double>> supp;
  supp.reserve(mu.support().size());
  for (const auto& [tuple, mass] : mu.support()) {
    std::vector<int> relabeled(tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i) relabeled[i] = perms[i][tuple[i]];
    supp.emplace_back(std::move(relabeled), mass);
  }
  return JointDistribution(mu.components(), std::move(supp));
}

}  // namespace

JointDistribution random_pairwise_independent(std::uint64_t seed) {
  Rng rng(seed);
  JointDistribution base = [&]() -> JointDistribution {
    switch (rng.below(4)) {
      case 0: return xor_triple_distribution();
      case 1: return ap_distribution(3, 3);
      case 2: return ap_distribution(5, 3);
      default: return gowers_cube_distribution(2, 2);
    }
  }();
  base = permute_atoms(base, rng);
  // Mixing with the product of the marginals keeps pairwise independence;
  // skipped when it would inflate the support past desk scale (30 points).
  std::vector<Distribution> margs;
  std::int64_t product_support = 1;
  for (int i = 0; i < base.arity(); ++i) {
    margs.push_back(base.marginal(i));
    product_support *= base.components()[i].size();
  }
  if (product_support > 30) return base;
  double lambda = 0.25 + 0.5 * rng.u01();
  return mix(base, product_distribution(margs), lambda);
}

PlantedInstance make_planted_instance(const JointDistribution& mu,
                                      std::span<const OrthonormalBasis> bases,
                                      int n, int coord, int noise_degree, double eta,
                                      std::uint64_t seed) {
  int k = mu.arity();
  if (coord < 0 || coord >= n) throw std::invalid_argument("make_planted_instance: bad coordinate");
  ColumnMomentTensor m = build_column_moment_tensor(mu, bases);

  // Largest weight-k moment entry: the planted character tuple.
  std::vector<int> sizes = m.alphabet_sizes;
  std::vector<int> digits(k, 0), best(k, 0);
  double best_mag = -1.0;
  do {
    bool full_weight = std::all_of(digits.begin(), digits.end(), [](int a) { return a > 0; });
    if (!full_weight) continue;
    double mag = std::abs(m.at(digits));
    if (mag > best_mag + 1e-12) {
      best_mag = mag;
      best = digits;
    }
  } while (next_point(digits, sizes));
  if (best_mag < 0.1)
    throw std::invalid_argument("make_planted_instance: no usable full-weight moment");

  PlantedInstance inst;
  inst.coord = coord;
  inst.planted_digits = best;

  for (int i = 0; i < k; ++i) {
    std::vector<int> fsizes(n, sizes[i]);
    FourierRepresentation rep(fsizes);
    MultiIndex planted(n, 0);
    planted[coord] = best[i];
    rep.set_coefficient(planted, Complex(1.0, 0.0), 0.0);
    if (eta > 0.0 && noise_degree > 0) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
      for (const auto& sigma : multi_indices_up_to_weight(fsizes, std::min(noise_degree, n))) {
        Complex noise = eta * rng.complex_gaussian();
        rep.set_coefficient(sigma, rep.coefficient(sigma) + noise, 0.0);
      }
    }
    rep = rep.scaled(Complex(1.0 / rep.l2_norm(), 0.0));
    inst.fs.push_back(std::move(rep));
  }

  Complex nc = noise_correlation(inst.fs, m);
  inst.noise_correlation_mag = std::abs(nc);
  Degree D{0};
  for (const auto& f : inst.fs) D = D + f.degree();
  BoundConstants bc = constants_for(mu, bases);
  double cd = pow_degree(bc.C, D);
  inst.delta_witness = inst.noise_correlation_mag / (4.0 * std::max(1, k - 2) * cd);
  inst.delta_family = inst.noise_correlation_mag / (2.0 * cd);
  return inst;
}

}  // namespace corrcert
