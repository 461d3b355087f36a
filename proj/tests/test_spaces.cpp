#include <doctest.h>

#include <cmath>
#include <set>

#include "corrcert/spaces.hpp"

using namespace corrcert;

namespace {

void check_support_invariants(const JointDistribution& mu) {
  double sum = 0.0;
  std::set<std::vector<int>> seen;
  for (const auto& [tuple, mass] : mu.support()) {
    CHECK(mass >= 0.0);
    CHECK(seen.insert(tuple).second);
    sum += mass;
  }
  CHECK(std::abs(sum - 1.0) <= 1e-12);
}

}  // namespace

TEST_CASE("marginal of a product of two uniform bits is uniform") {
  auto bit = Distribution::uniform(FiniteSpace::integers(2));
  auto mu = product_distribution({bit, bit});
  auto m1 = mu.marginal(0);
  CHECK(m1.mass(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m1.mass(1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("marginals of xor_triple are uniform on {-1,+1}") {
  auto mu = xor_triple_distribution();
  for (int i = 0; i < 3; ++i) {
    auto m = mu.marginal(i);
    CHECK(m.space().atoms[0] == "-1");
    CHECK(m.space().atoms[1] == "+1");
    CHECK(m.mass(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.mass(1) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("marginal of a point mass is a point mass") {
  auto space = FiniteSpace::integers(3);
  JointDistribution mu({space, space}, {{{1, 2}, 1.0}});
  auto m2 = mu.marginal(1);
  CHECK(m2.mass(2) == doctest::Approx(1.0));
  CHECK(m2.mass(0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(mu.marginal(2), std::out_of_range);
}

TEST_CASE("min_atom_alpha") {
  auto s4 = FiniteSpace::integers(4);
  CHECK(min_atom_alpha(Distribution::uniform(s4)) == doctest::Approx(0.25));
  auto s2 = FiniteSpace::integers(2);
  CHECK(min_atom_alpha(Distribution(s2, {0.75, 0.25})) == doctest::Approx(0.25));
  auto s3 = FiniteSpace::integers(3);
  CHECK(min_atom_alpha(Distribution(s3, {0.5, 0.5, 0.0})) == doctest::Approx(0.5));
  CHECK(min_atom_alpha(Distribution(FiniteSpace::integers(1), {1.0})) == doctest::Approx(1.0));
}

TEST_CASE("ap_distribution(3,3): nine support tuples of mass 1/9, matching enumeration") {
  auto mu = ap_distribution(3, 3);
  check_support_invariants(mu);
  REQUIRE(mu.support().size() == 9);
  std::set<std::vector<int>> expected;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      expected.insert({(x + y) % 3, (2 * x + y) % 3, (3 * x + y) % 3});
  REQUIRE(expected.size() == 9);
  for (const auto& [tuple, mass] : mu.support()) {
    CHECK(expected.count(tuple) == 1);
    CHECK(mass == doctest::Approx(1.0 / 9).epsilon(1e-13));
  }
}

TEST_CASE("ap_distribution(5,3) is pairwise independent") {
  CHECK(ap_distribution(5, 3).is_r_wise_independent(2, 1e-9));
}

TEST_CASE("ap_distribution preconditions") {
  CHECK_THROWS_AS(ap_distribution(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(ap_distribution(4, 3), std::invalid_argument);
  CHECK_THROWS_AS(ap_distribution(5, 2), std::invalid_argument);
  CHECK_NOTHROW(ap_distribution(5, 5));
}

TEST_CASE("pairwise independence of ap_distribution for all 3 <= k <= p <= 7") {
  for (int p : {3, 5, 7})
    for (int k = 3; k <= p; ++k) {
      auto mu = ap_distribution(p, k);
      check_support_invariants(mu);
      CHECK(mu.is_r_wise_independent(2, 1e-9));
      for (int i = 0; i < k; ++i) CHECK(mu.marginal(i).is_uniform(1e-12));
    }
}

TEST_CASE("gowers_cube_distribution(2,1) is the uniform law of (x+y, x)") {
  auto mu = gowers_cube_distribution(2, 1);
  check_support_invariants(mu);
  REQUIRE(mu.support().size() == 4);
  for (const auto& [tuple, mass] : mu.support()) CHECK(mass == doctest::Approx(0.25));
  // component 0 is S = {} (x + y), component 1 is S = {1} (x)
  std::set<std::vector<int>> expected;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) expected.insert({(x + y) % 2, x});
  for (const auto& [tuple, mass] : mu.support()) CHECK(expected.count(tuple) == 1);
}

TEST_CASE("gowers_cube_distribution is 3-wise independent for d >= 2") {
  for (int p : {2, 3}) {
    auto mu = gowers_cube_distribution(p, 2);
    check_support_invariants(mu);
    CHECK(mu.is_r_wise_independent(3, 1e-9));
  }
  CHECK(gowers_cube_distribution(2, 3).is_r_wise_independent(3, 1e-9));
}

TEST_CASE("gowers_cube_distribution marginals are uniform") {
  for (int p : {2, 3, 5})
    for (int d : {1, 2}) {
      auto mu = gowers_cube_distribution(p, d);
      for (int i = 0; i < mu.arity(); ++i) CHECK(mu.marginal(i).is_uniform(1e-12));
    }
}

TEST_CASE("xor_triple_distribution support and independence") {
  auto mu = xor_triple_distribution();
  check_support_invariants(mu);
  REQUIRE(mu.support().size() == 4);
  for (const auto& [tuple, mass] : mu.support()) {
    CHECK(mass == doctest::Approx(0.25));
    CHECK((2 * tuple[0] - 1) * (2 * tuple[1] - 1) * (2 * tuple[2] - 1) == 1);
  }
  CHECK(mu.is_r_wise_independent(2, 1e-9));
  CHECK_FALSE(mu.is_r_wise_independent(3, 1e-9));
}

TEST_CASE("xor_subset_distribution") {
  SUBCASE("m=2 with subset {0,1} gives (b1, b2, b1 xor b2), pairwise independent") {
    auto mu = xor_subset_distribution(2, {{0, 1}});
    check_support_invariants(mu);
    REQUIRE(mu.arity() == 3);
    REQUIRE(mu.support().size() == 4);
    for (const auto& [tuple, mass] : mu.support()) CHECK(tuple[2] == (tuple[0] ^ tuple[1]));
    CHECK(mu.is_r_wise_independent(2, 1e-9));
    CHECK_FALSE(mu.is_r_wise_independent(3, 1e-9));
  }
  SUBCASE("no subsets gives the product of two uniform bits") {
    auto mu = xor_subset_distribution(2, {});
    CHECK(mu.arity() == 2);
    CHECK(mu.is_r_wise_independent(2, 1e-9));
  }
  SUBCASE("a singleton subset duplicates a coordinate, breaking pairwise independence") {
    auto mu = xor_subset_distribution(2, {{0}});
    CHECK_FALSE(mu.is_r_wise_independent(2, 1e-9));
  }
  SUBCASE("empty or duplicate subsets rejected") {
    CHECK_THROWS_AS(xor_subset_distribution(2, {{}}), std::invalid_argument);
    CHECK_THROWS_AS(xor_subset_distribution(2, {{0, 1}, {1, 0}}), std::invalid_argument);
  }
}

TEST_CASE("any product distribution is k-wise independent") {
  auto d1 = Distribution(FiniteSpace::integers(2), {0.3, 0.7});
  auto d2 = Distribution(FiniteSpace::integers(3), {0.2, 0.5, 0.3});
  auto d3 = Distribution::uniform(FiniteSpace::integers(2));
  auto mu = product_distribution({d1, d2, d3});
  CHECK(mu.is_r_wise_independent(3, 1e-9));
  CHECK(mu.is_r_wise_independent(2, 1e-9));
}

TEST_CASE("mix of a pairwise independent law with its product stays pairwise independent") {
  auto base = xor_triple_distribution();
  std::vector<Distribution> margs;
  for (int i = 0; i < 3; ++i) margs.push_back(base.marginal(i));
  auto mixed = mix(base, product_distribution(margs), 0.4);
  check_support_invariants(mixed);
  CHECK(mixed.is_r_wise_independent(2, 1e-9));
  CHECK_FALSE(mixed.is_r_wise_independent(3, 1e-9));
}

TEST_CASE("projection merges masses and preserves coordinate order") {
  auto mu = ap_distribution(3, 3);
  std::vector<int> coords{2, 0};
  auto proj = mu.project(coords);
  CHECK(proj.arity() == 2);
  check_support_invariants(proj);
  // any pair of AP coordinates is uniform on Z_p^2
  CHECK(proj.is_r_wise_independent(2, 1e-9));
  for (const auto& [tuple, mass] : proj.support()) CHECK(mass == doctest::Approx(1.0 / 9));
}

TEST_CASE("constructor merges duplicate tuples") {
  auto space = FiniteSpace::integers(2);
  JointDistribution mu({space}, {{{0}, 0.25}, {{0}, 0.25}, {{1}, 0.5}});
  REQUIRE(mu.support().size() == 2);
  CHECK(mu.support()[0].second == doctest::Approx(0.5));
}

TEST_CASE("invalid constructions are rejected") {
  auto space = FiniteSpace::integers(2);
  CHECK_THROWS_AS(JointDistribution({space}, {{{0}, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(JointDistribution({space}, {{{2}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution(space, {0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution(space, {-0.1, 1.1}), std::invalid_argument);
  FiniteSpace dup{{"a", "a"}};
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);
}
