#include <doctest.h>

#include <cmath>

#include "corrcert/certify.hpp"
#include "corrcert/gowers.hpp"
#include "corrcert/instances.hpp"
#include "corrcert/rng.hpp"

using namespace corrcert;

namespace {

std::vector<OrthonormalBasis> bases_for_joint(const JointDistribution& mu, bool force_real = false) {
  std::vector<OrthonormalBasis> bases;
  for (int i = 0; i < mu.arity(); ++i) bases.push_back(basis_for(mu.marginal(i), force_real));
  return bases;
}

DenseFunction quadratic_phase(int n) {
  std::vector<int> sizes(n, 2);
  DenseFunction f = DenseFunction::zeros(sizes);
  std::vector<int> x(n, 0);
  std::int64_t flat = 0;
  do {
    int s = 0;
    for (int i = 0; i + 1 < n; ++i) s ^= x[i] & x[i + 1];
    f[flat++] = s ? Complex(-1, 0) : Complex(1, 0);
  } while (next_point(x, sizes));
  return f;
}

}  // namespace

TEST_CASE("deg_minus_2") {
  std::vector<Degree> a{Degree(2), Degree(3), Degree(4)};
  CHECK(deg_minus_2(a) == Degree(2));
  std::vector<Degree> b{Degree(7), Degree(1)};
  CHECK(deg_minus_2(b) == Degree(0));
  std::vector<Degree> c{Degree::bottom(), Degree(1), Degree(1)};
  CHECK(deg_minus_2(c).is_bottom());
  std::vector<Degree> d{Degree(5), Degree(1), Degree(3), Degree(2)};
  CHECK(deg_minus_2(d) == Degree(3));
  std::vector<Degree> single{Degree(1)};
  CHECK_THROWS_AS(deg_minus_2(single), std::invalid_argument);
}

TEST_CASE("deg_minus_2 is permutation invariant and monotone") {
  Rng rng(40);
  for (int trial = 0; trial < 20; ++trial) {
    int k = 3 + rng.below(3);
    std::vector<Degree> degs;
    for (int i = 0; i < k; ++i) degs.push_back(Degree(rng.below(5)));
    std::vector<Degree> shuffled = degs;
    for (int i = k - 1; i > 0; --i) std::swap(shuffled[i], shuffled[rng.below(i + 1)]);
    CHECK(deg_minus_2(degs) == deg_minus_2(shuffled));

    std::vector<Degree> bumped = degs;
    int j = rng.below(k);
    bumped[j] = Degree(bumped[j].value() + 1);
    CHECK_FALSE(deg_minus_2(bumped) < deg_minus_2(degs));
  }
}

TEST_CASE("theorem_constant values") {
  CHECK(theorem_constant(3, 2, 0.5, true) == doctest::Approx(27.0).epsilon(1e-12));
  CHECK(theorem_constant(3, 2, 0.25, false) == doctest::Approx(216.0).epsilon(1e-12));
  CHECK(theorem_constant(4, 3, 1.0 / 3.0, false) ==
        doctest::Approx(940.60406122874041).epsilon(1e-9));
}

TEST_CASE("certify_main on the xor character instance: 1 <= 27") {
  auto mu = xor_triple_distribution();
  auto bases = bases_for_joint(mu);
  std::vector<int> sizes{2};
  std::vector<FourierRepresentation> fs(3, unit_character(sizes, {1}));
  auto cert = certify_main(fs, mu, bases);
  CHECK(cert.holds);
  CHECK(cert.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cert.rhs == doctest::Approx(27.0).epsilon(1e-10));
  CHECK(cert.constants.balanced);
  CHECK(cert.constants.C == doctest::Approx(27.0));
  CHECK(cert.constants.D == Degree(1));
}

TEST_CASE("certify_main with a zero first function holds with both sides zero") {
  auto mu = xor_triple_distribution();
  auto bases = bases_for_joint(mu);
  std::vector<int> sizes{2};
  std::vector<FourierRepresentation> fs{FourierRepresentation(sizes), unit_character(sizes, {1}),
                                        unit_character(sizes, {1})};
  auto cert = certify_main(fs, mu, bases);
  CHECK(cert.holds);
  CHECK(cert.lhs == doctest::Approx(0.0));
  CHECK(cert.rhs == doctest::Approx(0.0));
  CHECK(cert.constants.D.is_bottom());
}

TEST_CASE("certify_main rejects dependent column laws") {
  auto space = FiniteSpace::integers(2);
  // perfectly correlated pair
  JointDistribution mu({space, space, space}, {{{0, 0, 0}, 0.5}, {{1, 1, 1}, 0.5}});
  auto bases = bases_for_joint(mu);
  std::vector<int> sizes{2};
  std::vector<FourierRepresentation> fs(3, unit_character(sizes, {1}));
  CHECK_THROWS_AS(certify_main(fs, mu, bases), std::invalid_argument);
}

TEST_CASE("certify_main randomized suite holds and is scale-invariant in the holds flag") {
  Rng seeds(41);
  for (int trial = 0; trial < 40; ++trial) {
    JointDistribution mu = (trial % 2 == 0) ? xor_triple_distribution() : ap_distribution(3, 3);
    auto bases = bases_for_joint(mu);
    int n = 1 + seeds.below(2);
    std::vector<FourierRepresentation> fs;
    for (int i = 0; i < mu.arity(); ++i)
      fs.push_back(generate_random_sparse_lowdeg(mu.components()[i].size(), n,
                                                 std::min(2, n), 6, seeds.next_u64(), true));
    auto cert = certify_main(fs, mu, bases);
    CHECK(cert.holds);

    std::vector<FourierRepresentation> scaled = fs;
    for (std::size_t i = 1; i < scaled.size(); ++i) scaled[i] = scaled[i].scaled(Complex(3.5, 0));
    auto cert2 = certify_main(scaled, mu, bases);
    CHECK(cert2.holds == cert.holds);
    CHECK(cert2.lhs == doctest::Approx(cert.lhs * std::pow(3.5, scaled.size() - 1)).epsilon(1e-9));
  }
}

TEST_CASE("certify_correlation: k = 2 gives zero on both sides") {
  auto bit = Distribution::uniform(FiniteSpace::integers(2));
  auto mu = product_distribution({bit, bit});
  auto bases = bases_for_joint(mu);
  Rng seeds(42);
  std::vector<FourierRepresentation> fs;
  for (int i = 0; i < 2; ++i)
    fs.push_back(generate_random_sparse_lowdeg(2, 2, 1, 3, seeds.next_u64(), true));
  auto cert = certify_correlation(fs, mu, bases);
  CHECK(cert.holds);
  CHECK(cert.rhs == doctest::Approx(0.0));
  CHECK(cert.lhs <= 1e-10);
}

TEST_CASE("certify_correlation: constants only give zero correlation") {
  auto mu = xor_triple_distribution();
  auto bases = bases_for_joint(mu);
  std::vector<int> sizes{2};
  std::vector<FourierRepresentation> fs;
  for (int i = 0; i < 3; ++i) {
    FourierRepresentation f(sizes);
    f.set_coefficient({0}, Complex(0.3 + 0.1 * i, 0));
    fs.push_back(std::move(f));
  }
  auto cert = certify_correlation(fs, mu, bases);
  CHECK(cert.holds);
  CHECK(cert.lhs <= 1e-12);
}

TEST_CASE("certify_correlation randomized suite") {
  Rng seeds(43);
  for (int trial = 0; trial < 30; ++trial) {
    JointDistribution mu = random_pairwise_independent(seeds.next_u64());
    auto bases = bases_for_joint(mu);
    int n = 1 + seeds.below(2);
    std::vector<FourierRepresentation> fs;
    for (int i = 0; i < mu.arity(); ++i)
      fs.push_back(generate_random_sparse_lowdeg(mu.components()[i].size(), n,
                                                 std::min(2, n), 5, seeds.next_u64(), true));
    auto cert = certify_correlation(fs, mu, bases);
    CHECK(cert.holds);
  }
}

TEST_CASE("certify_correlation enforces the norm precondition") {
  auto mu = xor_triple_distribution();
  auto bases = bases_for_joint(mu);
  std::vector<int> sizes{2};
  auto big = unit_character(sizes, {1}).scaled(Complex(2, 0));
  std::vector<FourierRepresentation> fs{big, big, big};
  CHECK_THROWS_AS(certify_correlation(fs, mu, bases), std::invalid_argument);
}

TEST_CASE("certify_roth: three equal characters over xor_triple are tight") {
  auto mu = xor_triple_distribution();
  auto bases = bases_for_joint(mu);
  std::vector<int> sizes{2};
  std::vector<FourierRepresentation> fs(3, unit_character(sizes, {1}));
  auto cert = certify_roth(fs, mu, bases);
  CHECK(cert.holds);
  CHECK(cert.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cert.rhs == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("certify_roth randomized over ap_distribution(5,3)") {
  auto mu = ap_distribution(5, 3);
  auto bases = bases_for_joint(mu);
  Rng seeds(44);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + seeds.below(3);
    std::vector<FourierRepresentation> fs;
    for (int i = 0; i < 3; ++i)
      fs.push_back(generate_random_sparse_lowdeg(5, n, std::min(2, n), 6, seeds.next_u64(), true));
    auto cert = certify_roth(fs, mu, bases);
    CHECK(cert.holds);
  }
}

TEST_CASE("certify_holder_truncation") {
  auto mu = xor_triple_distribution();
  auto bases = bases_for_joint(mu);
  SUBCASE("low-degree functions are unchanged by truncation") {
    Rng seeds(45);
    std::vector<DenseFunction> fs;
    for (int i = 0; i < 3; ++i) {
      auto rep = generate_random_sparse_lowdeg(2, 3, 1, 4, seeds.next_u64(), false);
      auto dense = inverse_transform(rep, replicate(bases[i], 3));
      auto measures = measures_of(replicate(bases[i], 3));
      double norm = lp_norm(dense, 3.0, measures);
      for (std::int64_t x = 0; x < dense.size(); ++x) dense[x] /= (norm + 0.1);
      fs.push_back(dense);
    }
    auto cert = certify_holder_truncation(fs, mu, bases, 1);
    CHECK(cert.holds);
    CHECK(cert.lhs <= 1e-10);
  }
  SUBCASE("weight d+1 characters: truncation removes everything, bound dominates") {
    std::vector<OrthonormalBasis> coord_bases = replicate(bases[0], 2);
    auto chi = character_function(coord_bases, MultiIndex{1, 1});
    std::vector<DenseFunction> fs(3, chi);
    auto cert = certify_holder_truncation(fs, mu, bases, 1);
    CHECK(cert.holds);
    CHECK(cert.constants.delta == doctest::Approx(1.0).epsilon(1e-10));  // eps = ||chi||_3
    CHECK(cert.rhs == doctest::Approx(12.0).epsilon(1e-9));              // k eps (1+eps)^{k-1}
  }
  SUBCASE("randomized suite") {
    Rng seeds(46);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<DenseFunction> fs;
      for (int i = 0; i < 3; ++i) {
        DenseFunction f = DenseFunction::zeros({2, 2});
        Rng rng(seeds.next_u64());
        for (std::int64_t x = 0; x < f.size(); ++x) f[x] = rng.complex_gaussian();
        auto measures = measures_of(replicate(bases[i], 2));
        double norm = lp_norm(f, 3.0, measures);
        for (std::int64_t x = 0; x < f.size(); ++x) f[x] /= (norm + 1e-9);
        fs.push_back(f);
      }
      auto cert = certify_holder_truncation(fs, mu, bases, 1);
      CHECK(cert.holds);
    }
  }
}

TEST_CASE("certify_inverse_gowers") {
  SUBCASE("single character: threshold below max coefficient for any eps < 1") {
    auto bases = replicate(standard_fourier_basis(2), 3);
    auto chi = character_function(bases, MultiIndex{1, 0, 1});
    auto cert = certify_inverse_gowers(chi, 2, 2, 3, 0.5);
    CHECK(cert.holds);
    CHECK(cert.rhs == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(cert.constants.delta == doctest::Approx(1.0).epsilon(1e-9));  // U^3 of a character
    CHECK(cert.lhs > 0.0);
    CHECK(cert.lhs < 1e-20);
  }
  SUBCASE("quadratic phase at n = 8: large norm, tiny threshold at its true degree") {
    auto f = quadratic_phase(8);
    auto cert = certify_inverse_gowers(f, 2, 8, 3, 0.5);
    CHECK(cert.holds);
    CHECK(cert.constants.delta == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cert.rhs == doctest::Approx(0.0625).epsilon(1e-10));
    CHECK(cert.lhs < cert.rhs);
  }
  SUBCASE("vacuous when the Gowers norm is below eps") {
    auto bases = replicate(standard_fourier_basis(2), 2);
    auto chi = character_function(bases, MultiIndex{1, 1});
    auto cert = certify_inverse_gowers(chi, 2, 2, 3, 1.5);
    CHECK(cert.holds);
    CHECK(cert.lhs == doctest::Approx(0.0));
  }
  SUBCASE("randomized degree-2 unit-norm functions over Z_2^4") {
    Rng seeds(47);
    for (int trial = 0; trial < 20; ++trial) {
      auto rep = generate_random_lowdeg(2, 4, 2, seeds.next_u64(), true);
      auto dense = inverse_transform(rep, replicate(standard_fourier_basis(2), 4));
      auto cert = certify_inverse_gowers(dense, 2, 2, 3, 0.4);
      CHECK(cert.holds);
    }
  }
  SUBCASE("degree precondition enforced") {
    auto f = quadratic_phase(4);
    CHECK_THROWS_AS(certify_inverse_gowers(f, 2, 1, 3, 0.5), std::invalid_argument);
  }
}

TEST_CASE("certify_ap_distinguisher") {
  SUBCASE("constants are vacuous") {
    std::vector<DenseFunction> fs(3, DenseFunction::constant({3}, Complex(0.5, 0)));
    auto rep = certify_ap_distinguisher(fs, 3, 0, 0.01);
    CHECK(rep.delta_gap <= 1e-12);
    CHECK_FALSE(rep.triggered);
    CHECK_FALSE(rep.theorem_violation);
  }
  SUBCASE("same character thrice over Z_3: gap 1, intersecting triple found") {
    auto bases = replicate(standard_fourier_basis(3), 1);
    auto chi = character_function(bases, MultiIndex{1});
    std::vector<DenseFunction> fs(3, chi);
    auto rep = certify_ap_distinguisher(fs, 3, 1, 0.5);
    CHECK(rep.triggered);
    CHECK(rep.delta_gap == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.none_uniform);
    REQUIRE(rep.triple_found);
    CHECK(rep.triple_indices == std::array<int, 3>{0, 1, 2});
    CHECK(rep.shared_coordinate == 0);
    for (const auto& s : rep.triple_sigmas) CHECK(s == MultiIndex{1});
    CHECK_FALSE(rep.theorem_violation);
  }
  SUBCASE("randomized degree <= 2 suite over p = 3, n = 2") {
    Rng seeds(48);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<DenseFunction> fs;
      for (int i = 0; i < 3; ++i) {
        auto rep = generate_random_lowdeg(3, 2, 2, seeds.next_u64(), true);
        fs.push_back(inverse_transform(rep, replicate(standard_fourier_basis(3), 2)));
      }
      auto rep = certify_ap_distinguisher(fs, 3, 2, 0.05);
      CHECK_FALSE(rep.theorem_violation);
    }
  }
}

TEST_CASE("certify_roth requires exactly three functions") {
  auto mu = ap_distribution(5, 4);
  std::vector<OrthonormalBasis> bases;
  for (int i = 0; i < 4; ++i) bases.push_back(basis_for(mu.marginal(i)));
  std::vector<FourierRepresentation> fs(4, unit_character({5}, {1}));
  CHECK_THROWS_AS(certify_roth(fs, mu, bases), std::invalid_argument);
}
