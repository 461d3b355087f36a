#include "corrcert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corrcert/gowers.hpp"

namespace corrcert {

BoundCertificate make_certificate(std::string name, double lhs, double rhs,
                                  BoundConstants constants, double tol) {
  BoundCertificate cert;
  cert.name = std::move(name);
  cert.lhs = lhs;
  cert.rhs = rhs;
  cert.holds = lhs <= rhs + tol;
  cert.slack = rhs - lhs;
  cert.constants = constants;
  cert.tol = tol;
  return cert;
}

Degree deg_minus_2(std::span<const Degree> degrees) {
  int k = static_cast<int>(degrees.size());
  if (k < 2) throw std::invalid_argument("deg_minus_2: need k >= 2");
  std::vector<Degree> sorted(degrees.begin(), degrees.end());
  std::sort(sorted.begin(), sorted.end());
  Degree sum{0};
  for (int i = 0; i < k - 2; ++i) sum = sum + sorted[i];
  return sum;
}

double theorem_constant(int k, int q, double alpha, bool balanced) {
  if (k < 2 || q < 1) throw std::invalid_argument("theorem_constant: bad k or q");
  if (alpha <= 0.0 || alpha > 1.0) throw std::invalid_argument("theorem_constant: bad alpha");
  double base = balanced ? k * std::sqrt(static_cast<double>(q - 1))
                         : k * std::sqrt((q - 1) / alpha);
  return base * base * base;
}

double pow_degree(double c, const Degree& d) {
  if (d.is_bottom()) return 0.0;
  return std::pow(c, static_cast<double>(d.value()));
}

BoundConstants constants_for(const JointDistribution& mu, std::span<const OrthonormalBasis> bases) {
  BoundConstants bc;
  bc.k = mu.arity();
  bc.q = 0;
  bc.alpha = 1.0;
  bool uniform = true;
  for (int i = 0; i < mu.arity(); ++i) {
    Distribution marg = mu.marginal(i);
    bc.q = std::max(bc.q, marg.size());
    bc.alpha = std::min(bc.alpha, min_atom_alpha(marg));
    uniform = uniform && marg.is_uniform(1e-9);
  }
  bool standard = bases.size() == static_cast<std::size_t>(mu.arity());
  for (const auto& b : bases) standard = standard && b.standard;
  bc.balanced = uniform && standard;
  bc.C = theorem_constant(bc.k, bc.q, bc.alpha, bc.balanced);
  return bc;
}

namespace {

void require_pairwise_independent(const JointDistribution& mu) {
  if (!mu.is_r_wise_independent(2, 1e-9))
    throw std::invalid_argument("certify: column law is not pairwise independent");
}

std::vector<Degree> degrees_of(std::span<const FourierRepresentation> fs) {
  std::vector<Degree> d;
  d.reserve(fs.size());
  for (const auto& f : fs) d.push_back(f.degree());
  return d;
}

void require_unit_l2(std::span<const FourierRepresentation> fs) {
  for (const auto& f : fs)
    if (f.l2_norm() > 1.0 + 1e-9)
      throw std::invalid_argument("certify: ||f_i||_2 must be <= 1");
}

}  // namespace

BoundCertificate certify_main(std::span<const FourierRepresentation> fs,
                              const JointDistribution& mu,
                              std::span<const OrthonormalBasis> bases, double tol) {
  require_pairwise_independent(mu);
  ColumnMomentTensor m = build_column_moment_tensor(mu, bases);
  double lhs = std::abs(nip_fourier(fs, m).value);

  BoundConstants bc = constants_for(mu, bases);
  std::vector<Degree> degs = degrees_of(fs);
  bc.D = deg_minus_2(degs);
  bc.delta = fs[0].sup_coefficient(true);

  double rhs = pow_degree(bc.C, bc.D) * bc.delta;
  for (std::size_t i = 1; i < fs.size(); ++i) rhs *= fs[i].l2_norm();
  return make_certificate("main", lhs, rhs, bc, tol);
}

BoundCertificate certify_correlation(std::span<const FourierRepresentation> fs,
                                     const JointDistribution& mu,
                                     std::span<const OrthonormalBasis> bases, double tol) {
  require_pairwise_independent(mu);
  require_unit_l2(fs);
  int k = static_cast<int>(fs.size());
  ColumnMomentTensor m = build_column_moment_tensor(mu, bases);
  double lhs = std::abs(noise_correlation(fs, m));

  BoundConstants bc = constants_for(mu, bases);
  bc.D = deg_minus_2(degrees_of(fs));
  bc.delta = 0.0;
  for (int i = 0; i < k - 2; ++i) bc.delta = std::max(bc.delta, fs[i].sup_coefficient(false));

  double rhs = bc.delta * (k - 2) * pow_degree(bc.C, bc.D);
  return make_certificate("correlation", lhs, rhs, bc, tol);
}

BoundCertificate certify_roth(std::span<const FourierRepresentation> fs,
                              const JointDistribution& mu,
                              std::span<const OrthonormalBasis> bases, double tol) {
  if (fs.size() != 3) throw std::invalid_argument("certify_roth: exactly three functions required");
  require_pairwise_independent(mu);
  require_unit_l2(fs);
  ColumnMomentTensor m = build_column_moment_tensor(mu, bases);
  double lhs = std::abs(nip_fourier(fs, m).value);
  double rhs = std::numeric_limits<double>::infinity();
  for (const auto& f : fs) rhs = std::min(rhs, f.sup_coefficient(true));

  BoundConstants bc = constants_for(mu, bases);
  bc.D = deg_minus_2(degrees_of(fs));
  bc.delta = rhs;
  return make_certificate("roth", lhs, rhs, bc, tol);
}

BoundCertificate certify_holder_truncation(std::span<const DenseFunction> fs,
                                           const JointDistribution& mu,
                                           std::span<const OrthonormalBasis> bases,
                                           int d, double tol) {
  int k = static_cast<int>(fs.size());
  if (k < 1) throw std::invalid_argument("certify_holder_truncation: empty function list");
  if (bases.size() != fs.size())
    throw std::invalid_argument("certify_holder_truncation: one basis per component required");

  double eps = 0.0;
  std::vector<DenseFunction> truncated;
  truncated.reserve(k);
  for (int i = 0; i < k; ++i) {
    auto coord_bases = replicate(bases[i], fs[i].dimension());
    auto measures = measures_of(coord_bases);
    if (lp_norm(fs[i], k, measures) > 1.0 + 1e-9)
      throw std::invalid_argument("certify_holder_truncation: ||f_i||_k must be <= 1");
    FourierRepresentation rep = transform(fs[i], coord_bases);
    truncated.push_back(inverse_transform(truncate(rep, TruncateMode::le, d), coord_bases));
    DenseFunction high = inverse_transform(truncate(rep, TruncateMode::gt, d), coord_bases);
    eps = std::max(eps, lp_norm(high, k, measures));
  }

  double full = std::abs(nip_bruteforce(fs, mu).value -
                         nip_bruteforce(truncated, mu).value);
  double rhs = k * eps * std::pow(1.0 + eps, k - 1);

  BoundConstants bc = constants_for(mu, bases);
  bc.delta = eps;
  bc.D = Degree(d);
  return make_certificate("holder-truncation", full, rhs, bc, tol);
}

BoundCertificate certify_inverse_gowers(const DenseFunction& f, int p, int d, int k,
                                        double eps, double tol, std::int64_t eval_cap) {
  if (k < 2) throw std::invalid_argument("certify_inverse_gowers: need k >= 2");
  OrthonormalBasis basis = standard_fourier_basis(p);
  auto bases = replicate(basis, f.dimension());
  FourierRepresentation rep = transform(f, bases);
  Degree deg = rep.degree();
  if (Degree(d) < deg)
    throw std::invalid_argument("certify_inverse_gowers: deg(f) exceeds d");
  if (std::abs(rep.l2_norm() - 1.0) > 1e-9)
    throw std::invalid_argument("certify_inverse_gowers: ||f||_2 must equal 1");

  double norm = gowers_norm(f, k, eval_cap).value;
  double max_coeff = rep.sup_coefficient(true);

  double lhs = 0.0;
  if (norm > eps) {
    double denom = std::pow(std::pow(2.0, k) * std::sqrt(static_cast<double>(p - 1)),
                            3.0 * d);
    lhs = std::pow(eps / denom, std::pow(2.0, k));
  }

  BoundConstants bc;
  bc.k = k;
  bc.q = p;
  bc.alpha = 1.0 / p;
  bc.balanced = true;
  bc.C = theorem_constant(1 << k, p, 1.0 / p, true);
  bc.D = deg;
  bc.delta = norm;  // records ||f||_{U^k}
  return make_certificate("inverse-gowers", lhs, max_coeff, bc, tol);
}

ApDistinguisherReport certify_ap_distinguisher(std::span<const DenseFunction> fs,
                                               int p, int d, double eps, double tol) {
  ApDistinguisherReport rep;
  rep.k = static_cast<int>(fs.size());
  rep.p = p;
  rep.d = d;
  rep.epsilon = eps;
  if (rep.k < 3) throw std::invalid_argument("certify_ap_distinguisher: need k >= 3");
  rep.n = fs[0].dimension();

  OrthonormalBasis basis = standard_fourier_basis(p);
  auto coord_bases = replicate(basis, rep.n);
  std::vector<FourierRepresentation> reps;
  reps.reserve(fs.size());
  for (const auto& f : fs) {
    FourierRepresentation r = transform(f, coord_bases);
    if (Degree(d) < r.degree())
      throw std::invalid_argument("certify_ap_distinguisher: deg(f_i) exceeds d");
    if (r.l2_norm() > 1.0 + 1e-9)
      throw std::invalid_argument("certify_ap_distinguisher: ||f_i||_2 must be <= 1");
    reps.push_back(std::move(r));
  }

  JointDistribution ap = ap_distribution(p, rep.k);
  Complex nip = nip_bruteforce(fs, ap).value;
  Complex means = 1.0;
  for (const auto& r : reps) means *= r.mean();
  rep.delta_gap = std::abs(nip - means);
  rep.triggered = rep.delta_gap > eps;

  double cdk = std::pow(rep.k * std::sqrt(static_cast<double>(p - 1)),
                        3.0 * d * rep.k);
  rep.uniformity_threshold = eps / cdk;
  rep.triple_threshold = std::pow(eps / (rep.k * cdk), std::pow(2.0, rep.k));
  for (const auto& r : reps) rep.max_coefficients.push_back(r.sup_coefficient(true));

  if (!rep.triggered) return rep;

  rep.none_uniform = true;
  for (double mc : rep.max_coefficients)
    if (mc <= rep.uniformity_threshold + tol) rep.none_uniform = false;

  // Exhaustive search for an intersecting triple of nonzero coefficients at
  // the 2^k-power threshold.
  std::vector<std::vector<MultiIndex>> candidates(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (const auto& [sigma, c] : reps[i].coefficients())
      if (weight(sigma) > 0 && std::abs(c) >= rep.triple_threshold - tol)
        candidates[i].push_back(sigma);

  for (std::size_t i1 = 0; i1 < fs.size() && !rep.triple_found; ++i1)
    for (std::size_t i2 = i1 + 1; i2 < fs.size() && !rep.triple_found; ++i2)
      for (std::size_t i3 = i2 + 1; i3 < fs.size() && !rep.triple_found; ++i3)
        for (const auto& s1 : candidates[i1])
          for (const auto& s2 : candidates[i2])
            for (const auto& s3 : candidates[i3]) {
              int shared = -1;
              for (int j = 0; j < rep.n; ++j)
                if (s1[j] > 0 && s2[j] > 0 && s3[j] > 0) {
                  shared = j;
                  break;
                }
              if (shared >= 0) {
                rep.triple_found = true;
                rep.triple_indices = {static_cast<int>(i1), static_cast<int>(i2),
                                      static_cast<int>(i3)};
                rep.triple_sigmas = {s1, s2, s3};
                rep.shared_coordinate = shared;
                goto done;
              }
            }
done:
  rep.theorem_violation = rep.triggered && (!rep.none_uniform || !rep.triple_found);
  return rep;
}

}  // namespace corrcert
