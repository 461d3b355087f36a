#include <doctest.h>

#include <cmath>

#include "corrcert/correlation.hpp"
#include "corrcert/instances.hpp"
#include "corrcert/rng.hpp"

using namespace corrcert;

namespace {

std::vector<OrthonormalBasis> bases_for_joint(const JointDistribution& mu, bool force_real = false) {
  std::vector<OrthonormalBasis> bases;
  for (int i = 0; i < mu.arity(); ++i) bases.push_back(basis_for(mu.marginal(i), force_real));
  return bases;
}

std::vector<DenseFunction> densify(std::span<const FourierRepresentation> fs,
                                   std::span<const OrthonormalBasis> bases) {
  std::vector<DenseFunction> out;
  for (std::size_t i = 0; i < fs.size(); ++i)
    out.push_back(inverse_transform(fs[i], replicate(bases[i], fs[i].dimension())));
  return out;
}

}  // namespace

TEST_CASE("column moment tensor: M[0..0] = 1 and pairwise entries vanish") {
  for (bool force_real : {false, true}) {
    for (const auto& mu : {xor_triple_distribution(), ap_distribution(3, 3),
                           gowers_cube_distribution(2, 2)}) {
      auto bases = bases_for_joint(mu, force_real);
      auto m = build_column_moment_tensor(mu, bases);
      std::vector<int> zero(mu.arity(), 0);
      CHECK(std::abs(m.at(zero) - Complex(1, 0)) <= 1e-12);
      std::vector<int> digits(mu.arity(), 0);
      do {
        int w = 0;
        for (int a : digits) w += (a > 0) ? 1 : 0;
        if (w == 1 || w == 2) CHECK(std::abs(m.at(digits)) <= 1e-10);
      } while (next_point(digits, m.alphabet_sizes));
    }
  }
}

TEST_CASE("moment tensor cap") {
  auto mu = ap_distribution(7, 7);
  auto bases = bases_for_joint(mu);
  CHECK_THROWS_AS(build_column_moment_tensor(mu, bases, 1000), EnumerationCapExceeded);
}

TEST_CASE("nip over a product law is the product of the means") {
  auto d1 = Distribution(FiniteSpace::integers(2), {0.3, 0.7});
  auto d2 = Distribution::uniform(FiniteSpace::integers(3));
  auto mu = product_distribution({d1, d2});
  std::vector<OrthonormalBasis> bases{gram_schmidt_basis(d1), standard_fourier_basis(3)};

  Rng seeds(3);
  int n = 2;
  std::vector<DenseFunction> fs;
  std::vector<Complex> means;
  for (int i = 0; i < 2; ++i) {
    DenseFunction f = DenseFunction::zeros(std::vector<int>(n, mu.components()[i].size()));
    Rng rng(seeds.next_u64());
    for (std::int64_t x = 0; x < f.size(); ++x) f[x] = rng.complex_gaussian();
    fs.push_back(f);
    auto rep = transform(f, replicate(bases[i], n));
    means.push_back(rep.mean());
  }
  auto r = nip_bruteforce(fs, mu);
  CHECK(std::abs(r.value - means[0] * means[1]) <= 1e-10);
}

TEST_CASE("nip over xor_triple of three first-coordinate characters is 1") {
  auto mu = xor_triple_distribution();
  // f(x) = x as a +-1 value: table (-1, +1) over atom indices
  DenseFunction f({2}, {Complex(-1, 0), Complex(1, 0)});
  std::vector<DenseFunction> fs{f, f, f};
  auto r = nip_bruteforce(fs, mu);
  CHECK(std::abs(r.value - Complex(1, 0)) <= 1e-12);
  CHECK(r.method == NipMethod::bruteforce);
}

TEST_CASE("nip with n = 0 returns the product of the constants") {
  auto mu = xor_triple_distribution();
  std::vector<DenseFunction> fs{DenseFunction::constant({}, Complex(2, 0)),
                                DenseFunction::constant({}, Complex(0, 1)),
                                DenseFunction::constant({}, Complex(0.5, 0))};
  auto r = nip_bruteforce(fs, mu);
  CHECK(std::abs(r.value - Complex(0, 1)) <= 1e-15);
}

TEST_CASE("nip_fourier on single characters multiplies per-column moments") {
  auto mu = ap_distribution(3, 3);
  auto bases = bases_for_joint(mu);
  auto m = build_column_moment_tensor(mu, bases);
  int n = 2;
  std::vector<int> sizes(n, 3);
  // the matched AP family (c, -2c, c) with c = 1: (1, 1, 1) over Z_3
  std::vector<FourierRepresentation> fs{unit_character(sizes, {1, 0}),
                                        unit_character(sizes, {1, 0}),
                                        unit_character(sizes, {1, 0})};
  auto r = nip_fourier(fs, m);
  Complex expected = m.at(std::vector<int>{1, 1, 1}) * m.at(std::vector<int>{0, 0, 0});
  CHECK(std::abs(r.value - expected) <= 1e-12);
}

TEST_CASE("pairwise-independent weight-1/2 character tuples have vanishing nip") {
  auto mu = xor_triple_distribution();
  auto bases = bases_for_joint(mu);
  auto m = build_column_moment_tensor(mu, bases);
  std::vector<int> sizes(2, 2);
  // coordinate 0 pattern (1,1,0) has weight 2; coordinate 1 pattern (0,0,1) weight 1
  std::vector<FourierRepresentation> fs{unit_character(sizes, {1, 0}),
                                        unit_character(sizes, {1, 0}),
                                        unit_character(sizes, {0, 1})};
  CHECK(std::abs(nip_fourier(fs, m).value) <= 1e-10);
}

TEST_CASE("oracle equivalence of nip_fourier and nip_bruteforce on random sparse instances") {
  Rng seeds(2024);
  for (int trial = 0; trial < 100; ++trial) {
    JointDistribution mu = random_pairwise_independent(seeds.next_u64());
    int k = mu.arity();
    int n = 1 + seeds.below(3);
    auto bases = bases_for_joint(mu, trial % 3 == 0);
    std::vector<FourierRepresentation> reps;
    for (int i = 0; i < k; ++i)
      reps.push_back(generate_random_sparse_lowdeg(mu.components()[i].size(), n,
                                                   std::min(2, n), 8, seeds.next_u64(), false));
    auto m = build_column_moment_tensor(mu, bases);
    auto fast = nip_fourier(reps, m);
    auto slow = nip_bruteforce(densify(reps, bases), mu);
    CHECK(std::abs(fast.value - slow.value) <= 1e-9);
  }
}

TEST_CASE("noise correlation vanishes for product laws and matches nip when a mean is 0") {
  auto bit = Distribution::uniform(FiniteSpace::integers(2));
  auto mu = product_distribution({bit, bit, bit});
  auto bases = bases_for_joint(mu);
  auto m = build_column_moment_tensor(mu, bases);
  Rng seeds(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FourierRepresentation> reps;
    for (int i = 0; i < 3; ++i)
      reps.push_back(generate_random_sparse_lowdeg(2, 2, 1, 4, seeds.next_u64(), false));
    CHECK(std::abs(noise_correlation(reps, m)) <= 1e-10);
  }

  auto xorm = xor_triple_distribution();
  auto xbases = bases_for_joint(xorm);
  auto xm = build_column_moment_tensor(xorm, xbases);
  std::vector<int> sizes{2};
  std::vector<FourierRepresentation> chars{unit_character(sizes, {1}), unit_character(sizes, {1}),
                                           unit_character(sizes, {1})};
  Complex nc = noise_correlation(chars, xm);
  Complex nip = nip_fourier(chars, xm).value;
  CHECK(std::abs(nc - nip) <= 1e-12);
  CHECK(std::abs(nc) == doctest::Approx(1.0));
}

TEST_CASE("nip is multilinear in each argument") {
  auto mu = xor_triple_distribution();
  auto bases = bases_for_joint(mu);
  auto m = build_column_moment_tensor(mu, bases);
  Rng seeds(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = generate_random_sparse_lowdeg(2, 2, 2, 4, seeds.next_u64(), false);
    auto b = generate_random_sparse_lowdeg(2, 2, 2, 4, seeds.next_u64(), false);
    auto f2 = generate_random_sparse_lowdeg(2, 2, 2, 4, seeds.next_u64(), false);
    auto f3 = generate_random_sparse_lowdeg(2, 2, 2, 4, seeds.next_u64(), false);
    Complex alpha(0.3, -1.1), beta(-0.4, 0.2);

    FourierRepresentation combo({2, 2});
    for (const auto& [sigma, c] : a.coefficients()) combo.set_coefficient(sigma, alpha * c, 0.0);
    for (const auto& [sigma, c] : b.coefficients())
      combo.set_coefficient(sigma, combo.coefficient(sigma) + beta * c, 0.0);

    std::vector<FourierRepresentation> lhs{combo, f2, f3};
    std::vector<FourierRepresentation> va{a, f2, f3};
    std::vector<FourierRepresentation> vb{b, f2, f3};
    Complex got = nip_fourier(lhs, m).value;
    Complex want = alpha * nip_fourier(va, m).value + beta * nip_fourier(vb, m).value;
    CHECK(std::abs(got - want) <= 1e-10);
  }
}

TEST_CASE("real-valued inputs under a real basis give a real nip") {
  auto mu = xor_triple_distribution();
  auto bases = bases_for_joint(mu, true);  // Gram-Schmidt is real here
  Rng seeds(10);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<DenseFunction> fs;
    for (int i = 0; i < 3; ++i) {
      DenseFunction f = DenseFunction::zeros({2, 2});
      Rng rng(seeds.next_u64());
      for (std::int64_t x = 0; x < f.size(); ++x) f[x] = Complex(rng.gaussian_pair().first, 0.0);
      fs.push_back(f);
    }
    auto r = nip_bruteforce(fs, mu);
    CHECK(std::abs(r.value.imag()) <= 1e-9);
  }
}

TEST_CASE("monte carlo: point mass is exact with zero stderr") {
  auto space = FiniteSpace::integers(2);
  JointDistribution mu({space, space}, {{{1, 0}, 1.0}});
  DenseFunction f({2}, {Complex(0.25, 0), Complex(-3, 0)});
  DenseFunction g({2}, {Complex(2, 0), Complex(0.5, 0)});
  std::vector<DenseFunction> fs{f, g};
  auto r = nip_montecarlo(fs, mu, 50, 123);
  CHECK(std::abs(r.value - Complex(-6, 0)) <= 1e-12);
  CHECK(*r.stderr_estimate == doctest::Approx(0.0));
}

TEST_CASE("monte carlo is deterministic in the seed and close to the oracle") {
  auto mu = ap_distribution(5, 3);
  Rng seeds(55);
  std::vector<DenseFunction> fs;
  for (int i = 0; i < 3; ++i) {
    DenseFunction f = DenseFunction::zeros({5, 5});
    Rng rng(seeds.next_u64());
    for (std::int64_t x = 0; x < f.size(); ++x) f[x] = Complex(2.0 * rng.u01() - 1.0, 0.0);
    fs.push_back(f);
  }
  auto a = nip_montecarlo(fs, mu, 100000, 77);
  auto b = nip_montecarlo(fs, mu, 100000, 77);
  CHECK(a.value == b.value);
  CHECK(*a.stderr_estimate == *b.stderr_estimate);

  auto exact = nip_bruteforce(fs, mu);
  double err = std::abs(a.value - exact.value);
  CHECK(err <= 4.0 * std::max(*a.stderr_estimate, 1e-6));
}

TEST_CASE("shape errors") {
  auto mu = xor_triple_distribution();
  std::vector<DenseFunction> two{DenseFunction::zeros({2}), DenseFunction::zeros({2})};
  CHECK_THROWS_AS(nip_bruteforce(two, mu), std::invalid_argument);
  std::vector<DenseFunction> wrong{DenseFunction::zeros({2}), DenseFunction::zeros({2}),
                                   DenseFunction::zeros({3})};
  CHECK_THROWS_AS(nip_bruteforce(wrong, mu), std::invalid_argument);
  std::vector<DenseFunction> mixed{DenseFunction::zeros({2}), DenseFunction::zeros({2, 2}),
                                   DenseFunction::zeros({2})};
  CHECK_THROWS_AS(nip_bruteforce(mixed, mu), std::invalid_argument);
}

TEST_CASE("nip_bruteforce refuses past its evaluation cap") {
  auto mu = ap_distribution(5, 3);
  std::vector<DenseFunction> fs(3, DenseFunction::constant({5, 5, 5, 5}, Complex(1, 0)));
  CHECK_THROWS_AS(nip_bruteforce(fs, mu, 1000), EnumerationCapExceeded);
}

TEST_CASE("monte carlo on a constant-product instance has zero spread") {
  auto mu = xor_triple_distribution();
  DenseFunction sign({2}, {Complex(-1, 0), Complex(1, 0)});
  std::vector<DenseFunction> fs{sign, sign, sign};
  auto r = nip_montecarlo(fs, mu, 1000, 5);
  CHECK(r.value == Complex(1, 0));
  CHECK(*r.stderr_estimate == 0.0);
}

TEST_CASE("xor moment tensor orientation per basis") {
  auto mu = xor_triple_distribution();
  // Gram-Schmidt basis on a uniform bit is (-1, +1): the identity on labels,
  // so the full-weight moment is E[xyz] = +1.
  auto gs = bases_for_joint(mu, true);
  auto mg = build_column_moment_tensor(mu, gs);
  CHECK(std::abs(mg.at(std::vector<int>{1, 1, 1}) - Complex(1, 0)) <= 1e-12);
  // The standard basis is (+1, -1) on atom indices, the sign flip of the
  // labels, so the same moment lands at -1.
  auto std_bases = bases_for_joint(mu, false);
  auto ms = build_column_moment_tensor(mu, std_bases);
  CHECK(std::abs(ms.at(std::vector<int>{1, 1, 1}) - Complex(-1, 0)) <= 1e-12);
}

TEST_CASE("nip is invariant under simultaneous permutation of functions and components") {
  Rng seeds(91);
  for (int trial = 0; trial < 10; ++trial) {
    auto mu = ap_distribution(5, 3);
    std::vector<DenseFunction> fs;
    for (int i = 0; i < 3; ++i) {
      DenseFunction f = DenseFunction::zeros({5, 5});
      Rng rng(seeds.next_u64());
      for (std::int64_t x = 0; x < f.size(); ++x) f[x] = rng.complex_gaussian();
      fs.push_back(std::move(f));
    }
    std::vector<int> perm{2, 0, 1};
    auto permuted_mu = mu.project(perm);
    std::vector<DenseFunction> permuted_fs{fs[2], fs[0], fs[1]};
    Complex a = nip_bruteforce(fs, mu).value;
    Complex b = nip_bruteforce(permuted_fs, permuted_mu).value;
    CHECK(std::abs(a - b) <= 1e-12);
  }
}
