#include "corrcert/gowers.hpp"

#include <cmath>
#include <limits>

#include "corrcert/correlation.hpp"

namespace corrcert {

namespace {

int group_modulus(const DenseFunction& f) {
  const auto& sizes = f.alphabet_sizes();
  if (sizes.empty()) throw std::invalid_argument("gowers: function must have n >= 1");
  int p = sizes[0];
  for (int q : sizes)
    if (q != p) throw std::invalid_argument("gowers: function must live on Z_p^n");
  return p;
}

double root_of_power(Complex raw, int d) {
  return std::pow(std::abs(raw), 1.0 / static_cast<double>(1LL << d));
}

// f_Y(X) = f(X+Y) conj(f(X)), addition coordinatewise mod p.
DenseFunction derivative(const DenseFunction& f, std::span<const int> y, int p) {
  const auto& sizes = f.alphabet_sizes();
  int n = f.dimension();
  DenseFunction out = DenseFunction::zeros(sizes);
  std::vector<int> x(n, 0), shifted(n);
  std::int64_t flat = 0;
  do {
    for (int j = 0; j < n; ++j) shifted[j] = (x[j] + y[j]) % p;
    out[flat] = f.at(shifted) * std::conj(f[flat]);
    ++flat;
  } while (next_point(x, sizes));
  return out;
}

Complex mean_uniform(const DenseFunction& f) {
  Complex acc = 0.0;
  for (std::int64_t i = 0; i < f.size(); ++i) acc += f[i];
  return acc / static_cast<double>(f.size());
}

}  // namespace

GowersResult gowers_direct(const DenseFunction& f, int d, std::int64_t eval_cap) {
  if (d < 1) throw std::invalid_argument("gowers_direct: need d >= 1");
  int p = group_modulus(f);
  int n = f.dimension();
  double tuples = std::pow(static_cast<double>(f.size()), d + 1);
  if (tuples * static_cast<double>(1LL << d) > static_cast<double>(eval_cap))
    throw EnumerationCapExceeded("gowers_direct: enumeration exceeds cap");

  std::vector<int> seed_sizes(static_cast<std::size_t>(n) * (d + 1), p);
  std::vector<int> seed(seed_sizes.size(), 0);  // (X, Y_1, ..., Y_d)
  std::vector<int> arg(n);
  Complex acc = 0.0;
  do {
    Complex prod = 1.0;
    for (int s = 0; s < (1 << d); ++s) {
      for (int j = 0; j < n; ++j) {
        int v = seed[j];
        for (int i = 0; i < d; ++i)
          if (!(s & (1 << i))) v += seed[(i + 1) * n + j];
        arg[j] = v % p;
      }
      Complex val = f.at(arg);
      // C^{|S|+1}: conjugate when |S| is even.
      if (__builtin_popcount(static_cast<unsigned>(s)) % 2 == 0) val = std::conj(val);
      prod *= val;
    }
    acc += prod;
  } while (next_point(seed, seed_sizes));
  acc /= tuples;
  return GowersResult{d, root_of_power(acc, d), acc, GowersRoute::direct};
}

GowersResult gowers_recursive(const DenseFunction& f, int d, std::int64_t eval_cap) {
  if (d < 1) throw std::invalid_argument("gowers_recursive: need d >= 1");
  int p = group_modulus(f);
  // Dominant cost: p^{n(d-1)} derivative tables of p^n points each, plus the
  // base-case means.
  double cost = 2.0 * std::pow(static_cast<double>(f.size()), d);
  if (cost > static_cast<double>(eval_cap))
    throw EnumerationCapExceeded("gowers_recursive: enumeration exceeds cap");

  // raw(g, d) = E_Y[ raw(g_Y, d-1) ], raw(g, 1) = |E g|^2.
  auto raw = [&](auto&& self, const DenseFunction& g, int dd) -> Complex {
    if (dd == 1) {
      Complex m = mean_uniform(g);
      return m * std::conj(m);
    }
    const auto& sizes = g.alphabet_sizes();
    std::vector<int> y(g.dimension(), 0);
    Complex acc = 0.0;
    do {
      acc += self(self, derivative(g, y, p), dd - 1);
    } while (next_point(y, sizes));
    return acc / static_cast<double>(g.size());
  };
  Complex power = raw(raw, f, d);
  return GowersResult{d, root_of_power(power, d), power, GowersRoute::recursive};
}

GowersResult u2_closed_form(const FourierRepresentation& f) {
  double raw = 0.0;
  for (const auto& [sigma, c] : f.coefficients()) {
    double a = std::norm(c);
    raw += a * a;
  }
  return GowersResult{2, std::pow(raw, 0.25), Complex(raw, 0.0), GowersRoute::u2_closed_form};
}

GowersResult gowers_via_cube_nip(const DenseFunction& f, int d, std::int64_t eval_cap) {
  if (d < 1) throw std::invalid_argument("gowers_via_cube_nip: need d >= 1");
  int p = group_modulus(f);
  int n = f.dimension();
  JointDistribution cube = gowers_cube_distribution(p, d);
  double cost = std::pow(static_cast<double>(cube.support().size()), n) * (1 << d);
  if (cost > static_cast<double>(eval_cap))
    throw EnumerationCapExceeded("gowers_via_cube_nip: enumeration exceeds cap");

  std::vector<DenseFunction> gs;
  gs.reserve(1u << d);
  for (int s = 0; s < (1 << d); ++s) {
    if (__builtin_popcount(static_cast<unsigned>(s)) % 2 == 0) {
      std::vector<Complex> conj_vals(f.values());
      for (auto& v : conj_vals) v = std::conj(v);
      gs.emplace_back(f.alphabet_sizes(), std::move(conj_vals));
    } else {
      gs.push_back(f);
    }
  }
  Complex power = nip_bruteforce(gs, cube, eval_cap).value;
  return GowersResult{d, root_of_power(power, d), power, GowersRoute::cube_nip};
}

GowersResult gowers_norm(const DenseFunction& f, int d, std::int64_t eval_cap) {
  try {
    return gowers_direct(f, d, eval_cap);
  } catch (const EnumerationCapExceeded&) {
    return gowers_recursive(f, d, eval_cap);
  }
}

BoundCertificate check_gowers_inequality(std::span<const DenseFunction> fs, int p, int n,
                                         double tol, std::int64_t eval_cap) {
  int k = static_cast<int>(fs.size());
  if (k < 3) throw std::invalid_argument("check_gowers_inequality: need k >= 3");
  if (k > p) throw std::invalid_argument("check_gowers_inequality: need k <= p");
  std::vector<Distribution> uniform(n, Distribution::uniform(FiniteSpace::integers(p)));
  for (const auto& f : fs) {
    if (f.dimension() != n || group_modulus(f) != p)
      throw std::invalid_argument("check_gowers_inequality: function not on Z_p^n");
    if (lp_norm(f, std::numeric_limits<double>::infinity(), uniform) > 1.0 + 1e-9)
      throw std::invalid_argument("check_gowers_inequality: ||f||_inf must be <= 1");
  }

  double lhs = std::abs(nip_bruteforce(fs, ap_distribution(p, k), eval_cap).value);
  double rhs = std::numeric_limits<double>::infinity();
  for (const auto& f : fs) rhs = std::min(rhs, gowers_norm(f, k - 1, eval_cap).value);

  BoundConstants constants;
  constants.k = k;
  constants.q = p;
  constants.alpha = 1.0 / p;
  constants.balanced = true;
  constants.C = theorem_constant(k, p, 1.0 / p, true);
  constants.D = Degree(0);
  constants.delta = rhs;
  return make_certificate("gowers-inequality", lhs, rhs, constants, tol);
}

}  // namespace corrcert
