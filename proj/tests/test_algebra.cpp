#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "orb4/algebra.hpp"

using namespace orb4::algebra;

namespace {

// Independent oracle for normalize_torsion: two finite abelian groups are
// isomorphic iff for every m they have the same number of elements of order
// dividing m. Counting those is a product over the given cyclic orders, so we
// can compare a normalized answer against the raw input without touching the
// normalization code path.
std::int64_t elements_of_order_dividing(const std::vector<std::int64_t>& orders,
                                        std::int64_t m) {
  std::int64_t count = 1;
  for (auto o : orders) count *= std::gcd(o, m);
  return count;
}

bool same_group(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::int64_t bound = 1;
  for (auto o : a) bound = std::lcm(bound, o);
  for (auto o : b) bound = std::lcm(bound, o);
  for (std::int64_t m = 1; m <= bound; ++m) {
    if (elements_of_order_dividing(a, m) != elements_of_order_dividing(b, m)) return false;
  }
  return true;
}

bool is_invariant_factor_chain(const std::vector<std::int64_t>& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 2) return false;
    if (i + 1 < d.size() && d[i + 1] % d[i] != 0) return false;
  }
  return true;
}

GradedGroup graded(std::vector<FgAbelianGroup> groups) {
  GradedGroup g(static_cast<int>(groups.size()) - 1);
  for (std::size_t k = 0; k < groups.size(); ++k) g.set(static_cast<int>(k), groups[k]);
  return g;
}

const FgAbelianGroup kZ = FgAbelianGroup::free_abelian(1);
const FgAbelianGroup kTrivial;

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("invariant factor constructor enforces the divisibility chain") {
  CHECK_NOTHROW(FgAbelianGroup(2, {2, 4, 12}));
  CHECK_THROWS_AS(FgAbelianGroup(0, {4, 2}), std::invalid_argument);
  CHECK_THROWS_AS(FgAbelianGroup(0, {2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(FgAbelianGroup(0, {1}), std::invalid_argument);
  CHECK_THROWS_AS(FgAbelianGroup(-1, {}), std::invalid_argument);
}

TEST_CASE("cyclic and free_abelian builders") {
  CHECK(FgAbelianGroup::cyclic(1) == kTrivial);
  CHECK(FgAbelianGroup::cyclic(7) == FgAbelianGroup(0, {7}));
  CHECK(FgAbelianGroup::free_abelian(0) == kTrivial);
  CHECK(FgAbelianGroup::free_abelian(2).rank() == 2);
  CHECK_THROWS_AS(FgAbelianGroup::cyclic(0), std::invalid_argument);
}

TEST_CASE("to_string renders groups readably") {
  CHECK(kTrivial.to_string() == "0");
  CHECK(kZ.to_string() == "Z");
  CHECK(FgAbelianGroup::free_abelian(3).to_string() == "Z^3");
  CHECK(FgAbelianGroup::cyclic(5).to_string() == "Z_5");
  CHECK(FgAbelianGroup(1, {2, 4}).to_string() == "Z + Z_2 + Z_4");
}

TEST_CASE("torsion_order multiplies the factors") {
  CHECK(kTrivial.torsion_order() == 1);
  CHECK(FgAbelianGroup(3, {}).torsion_order() == 1);
  CHECK(FgAbelianGroup(0, {2, 6}).torsion_order() == 12);
}

TEST_CASE("normalize_torsion produces the canonical chain") {
  auto check_case = [](std::vector<std::int64_t> orders,
                       std::vector<std::int64_t> expected) {
    auto g = normalize_torsion(orders);
    CHECK(g.rank() == 0);
    CHECK(g.torsion() == expected);
  };
  check_case({}, {});
  check_case({6}, {6});
  check_case({2, 3}, {6});
  check_case({4, 6}, {2, 12});
  check_case({2, 2, 2}, {2, 2, 2});
  check_case({12, 18}, {6, 36});
  check_case({8, 9, 5}, {360});
  check_case({2, 4, 8}, {2, 4, 8});  // already canonical
}

TEST_CASE("normalize_torsion agrees with the element-count oracle") {
  // Exhaustive over short order lists with small entries.
  std::vector<std::vector<std::int64_t>> inputs;
  for (std::int64_t a = 2; a <= 12; ++a) inputs.push_back({a});
  for (std::int64_t a = 2; a <= 12; ++a)
    for (std::int64_t b = 2; b <= 12; ++b) inputs.push_back({a, b});
  for (std::int64_t a = 2; a <= 8; ++a)
    for (std::int64_t b = 2; b <= 8; ++b)
      for (std::int64_t c = 2; c <= 8; ++c) inputs.push_back({a, b, c});
  for (const auto& in : inputs) {
    auto g = normalize_torsion(in);
    REQUIRE(is_invariant_factor_chain(g.torsion()));
    REQUIRE(same_group(in, g.torsion()));
  }
}

TEST_CASE("normalize_torsion rejects orders below 2") {
  std::vector<std::int64_t> bad = {4, 1};
  CHECK_THROWS_AS(normalize_torsion(bad), std::invalid_argument);
  std::vector<std::int64_t> zero = {0};
  CHECK_THROWS_AS(normalize_torsion(zero), std::invalid_argument);
}

TEST_CASE("graded groups are trivial outside their range") {
  GradedGroup g(2);
  g.set(1, FgAbelianGroup::cyclic(3));
  CHECK(g.at(1) == FgAbelianGroup::cyclic(3));
  CHECK(g.at(0) == kTrivial);
  CHECK(g.at(-5) == kTrivial);
  CHECK(g.at(99) == kTrivial);
}

TEST_CASE("euler characteristic alternates free ranks and ignores torsion") {
  auto g = graded({kZ, kTrivial, FgAbelianGroup(3, {2, 4}), kTrivial, kZ});
  CHECK(euler_characteristic(g) == 1 - 0 + 3 - 0 + 1);
}

TEST_CASE("universal coefficients shifts torsion up one degree") {
  // Homology (Z, Z_2, Z + Z_3, 0, Z): cohomology keeps ranks in place and
  // moves each torsion group up by one.
  auto h = graded({kZ, FgAbelianGroup::cyclic(2), FgAbelianGroup(1, {3}), kTrivial, kZ});
  auto c = universal_coefficients_cohomology(h);
  CHECK(c.at(0) == kZ);
  CHECK(c.at(1) == kTrivial);
  CHECK(c.at(2) == FgAbelianGroup(1, {2}));
  CHECK(c.at(3) == FgAbelianGroup::cyclic(3));
  CHECK(c.at(4) == kZ);
}

TEST_CASE("lens suspension tables") {
  auto t = lens_suspension_tables(5, 2);
  CHECK(t.homology.at(0) == kZ);
  CHECK(t.homology.at(1) == kTrivial);
  CHECK(t.homology.at(2) == FgAbelianGroup::cyclic(5));
  CHECK(t.homology.at(3) == kTrivial);
  CHECK(t.homology.at(4) == kZ);
  CHECK(t.cohomology.at(2) == kTrivial);
  CHECK(t.cohomology.at(3) == FgAbelianGroup::cyclic(5));
  // Tables are q-independent as long as q is a unit mod p.
  CHECK(lens_suspension_tables(5, 3).homology == t.homology);
  // UCT applied to the homology row reproduces the cohomology row.
  CHECK(universal_coefficients_cohomology(t.homology) == t.cohomology);
  CHECK_THROWS_AS(lens_suspension_tables(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(lens_suspension_tables(1, 1), std::invalid_argument);
}

TEST_CASE("rational profile has ranks 1, 0, n-2, 0, 1") {
  auto g = rational_cohomology_profile(3);
  CHECK(g.at(0) == kZ);
  CHECK(g.at(1) == kTrivial);
  CHECK(g.at(2) == kZ);
  CHECK(g.at(4) == kZ);
  CHECK(euler_characteristic(g) == 3);
  CHECK_THROWS_AS(rational_cohomology_profile(1), std::invalid_argument);
}

TEST_CASE("torsion-free rational profiles validate for every n") {
  for (std::int64_t n = 2; n <= 12; ++n) {
    const auto g = rational_cohomology_profile(n);
    CHECK(euler_characteristic(g) == n);
    CHECK(validate_cohomology_profile(g, n, Pi1OrbOrder{1}).passed);
  }
}

TEST_CASE("profile validation accepts the lens suspension") {
  auto t = lens_suspension_tables(7, 1);
  auto res = validate_cohomology_profile(t.cohomology, 2, Pi1OrbOrder{7});
  CHECK(res.passed);
  CHECK(res.failing_clause.empty());
}

TEST_CASE("profile validation names the first failing clause") {
  auto t = lens_suspension_tables(7, 1);

  SUBCASE("wrong H0") {
    auto c = t.cohomology;
    c.set(0, FgAbelianGroup::free_abelian(2));
    CHECK(validate_cohomology_profile(c, 2, Pi1OrbOrder{7}).failing_clause ==
          "H0 is Z");
  }
  SUBCASE("nonvanishing H1") {
    auto c = t.cohomology;
    c.set(1, FgAbelianGroup::cyclic(2));
    CHECK(validate_cohomology_profile(c, 2, Pi1OrbOrder{7}).failing_clause ==
          "H1 vanishes");
  }
  SUBCASE("H2 rank off by one") {
    CHECK(validate_cohomology_profile(t.cohomology, 3, Pi1OrbOrder{7}).failing_clause ==
          "H2 is Z^(n-2)");
  }
  SUBCASE("H3 with a free part") {
    auto c = t.cohomology;
    c.set(3, FgAbelianGroup(1, {7}));
    CHECK(validate_cohomology_profile(c, 2, Pi1OrbOrder{7}).failing_clause ==
          "H3 is pure torsion");
  }
  SUBCASE("wrong H4") {
    auto c = t.cohomology;
    c.set(4, kTrivial);
    CHECK(validate_cohomology_profile(c, 2, Pi1OrbOrder{7}).failing_clause ==
          "H4 is Z");
  }
  SUBCASE("H3 too large for the fundamental group") {
    auto c = t.cohomology;
    c.set(3, FgAbelianGroup::cyclic(4));
    auto res = validate_cohomology_profile(c, 2, Pi1OrbOrder{2});
    CHECK_FALSE(res.passed);
    CHECK(res.failing_clause == "surjection bound");
  }
  SUBCASE("surjection bound is vacuous for infinite pi1orb") {
    auto c = t.cohomology;
    c.set(3, FgAbelianGroup::cyclic(4));
    CHECK(validate_cohomology_profile(c, 2, std::nullopt).passed);
  }
  SUBCASE("order dividing, not merely bounded") {
    auto c = t.cohomology;
    c.set(3, FgAbelianGroup::cyclic(4));
    // |H3| = 4 <= 6 but 4 does not divide 6, so no surjection exists.
    CHECK(validate_cohomology_profile(c, 2, Pi1OrbOrder{6}).failing_clause ==
          "surjection bound");
    CHECK(validate_cohomology_profile(c, 2, Pi1OrbOrder{8}).passed);
  }
}

TEST_CASE("rational duality checks rank symmetry") {
  auto t = lens_suspension_tables(3, 1);
  CHECK(rational_duality_check(t.homology));
  auto bad = t.homology;
  bad.set(1, kZ);
  CHECK_FALSE(rational_duality_check(bad));
}

TEST_CASE("integer duality defect of a lens suspension sits in the middle degrees") {
  auto t = lens_suspension_tables(5, 1);
  auto defect = integer_duality_defect(t.cohomology, t.homology);
  CHECK_FALSE(defect.trivial());
  CHECK(defect.rank_mismatch_degrees.empty());
  // Duality would need H^{4-k} == H_k. At k = 1: H^3 = Z_5 vs H_1 = 0.
  // At k = 2: H^2 = 0 vs H_2 = Z_5. Elsewhere the pair agrees.
  CHECK(defect.torsion_defect.at(1) == FgAbelianGroup::cyclic(5));
  CHECK(defect.torsion_defect.at(2) == FgAbelianGroup::cyclic(5));
  CHECK(defect.torsion_defect.at(0) == kTrivial);
  CHECK(defect.torsion_defect.at(3) == kTrivial);
  CHECK(defect.torsion_defect.at(4) == kTrivial);
}

TEST_CASE("integer duality defect vanishes for a manifold-like table") {
  // Tables of the 4-sphere.
  auto h = graded({kZ, kTrivial, kTrivial, kTrivial, kZ});
  auto c = universal_coefficients_cohomology(h);
  auto defect = integer_duality_defect(c, h);
  CHECK(defect.trivial());
}

TEST_CASE("defect takes a symmetric difference of primary parts") {
  // degree 3 torsion Z_12 = Z_4 + Z_3 against H_1 torsion Z_6 = Z_2 + Z_3:
  // shared Z_3 cancels, leaving Z_4 and Z_2, i.e. Z_2 + Z_4.
  auto h = graded({kZ, FgAbelianGroup::cyclic(6), kTrivial, kTrivial, kZ});
  auto c = graded({kZ, kTrivial, kTrivial, FgAbelianGroup::cyclic(12), kZ});
  auto defect = integer_duality_defect(c, h);
  CHECK(defect.torsion_defect.at(1) == FgAbelianGroup(0, {2, 4}));
}

TEST_CASE("rank mismatches are reported separately from torsion") {
  auto h = graded({kZ, kTrivial, FgAbelianGroup::free_abelian(2), kTrivial, kZ});
  auto c = graded({kZ, kTrivial, kZ, kTrivial, kZ});
  auto defect = integer_duality_defect(c, h);
  CHECK(defect.rank_mismatch_degrees == std::vector<int>{2});
  CHECK_FALSE(defect.trivial());
}

TEST_CASE("defect requires matching dimensions") {
  GradedGroup a(4), b(3);
  CHECK_THROWS_AS(integer_duality_defect(a, b), std::invalid_argument);
}

}  // TEST_SUITE
