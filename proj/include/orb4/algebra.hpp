#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace orb4::algebra {

/// Finitely generated abelian group Z^rank + Z/d1 + ... + Z/ds in invariant
/// factor form: every di >= 2 and d1 | d2 | ... | ds. Equality of groups is
/// sequence equality, which is the point of the canonical form.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;  // trivial group
  FgAbelianGroup(std::int64_t rank, std::vector<std::int64_t> invariant_factors);

  static FgAbelianGroup free_abelian(std::int64_t rank);
  static FgAbelianGroup cyclic(std::int64_t order);  // order >= 1; 1 gives the trivial group

  std::int64_t rank() const { return rank_; }
  const std::vector<std::int64_t>& torsion() const { return torsion_; }

  bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }
  bool is_torsion_free() const { return torsion_.empty(); }
  /// Order of the torsion subgroup (1 when torsion free). Throws on overflow.
  std::int64_t torsion_order() const;

  bool operator==(const FgAbelianGroup&) const = default;

  /// "0", "Z", "Z^3", "Z_5", "Z + Z_2 + Z_4", ...
  std::string to_string() const;

 private:
  std::int64_t rank_ = 0;
  std::vector<std::int64_t> torsion_;
};

/// Graded family of groups over degrees 0..dimension; degrees outside the
/// range are implicitly trivial.
class GradedGroup {
 public:
  explicit GradedGroup(int dimension);

  int dimension() const { return dimension_; }
  const FgAbelianGroup& at(int degree) const;
  void set(int degree, FgAbelianGroup group);

  bool operator==(const GradedGroup&) const = default;

 private:
  int dimension_ = 0;
  std::vector<FgAbelianGroup> groups_;
};

/// Canonical invariant-factor presentation of Z/o1 + ... + Z/os, computed by
/// repeated gcd/lcm merging. Rejects any order < 2. Idempotent on input that
/// already satisfies the divisibility chain.
FgAbelianGroup normalize_torsion(std::span<const std::int64_t> orders);

/// Alternating sum of free ranks; torsion is ignored.
std::int64_t euler_characteristic(const GradedGroup& g);

/// Cohomology of a space from its integral homology: H^k has the free rank of
/// H_k and the torsion of H_{k-1}. Requires dimension >= 1.
GradedGroup universal_coefficients_cohomology(const GradedGroup& homology);

/// Rational cohomology profile of a closed orientable simply connected
/// 4-space with Euler characteristic n: ranks (1, 0, n-2, 0, 1), no torsion.
/// Requires n >= 2.
GradedGroup rational_cohomology_profile(std::int64_t n);

/// Sentinel-free representation of the orbifold fundamental group order:
/// engaged = finite of that order, nullopt = infinite.
using Pi1OrbOrder = std::optional<std::int64_t>;

struct ProfileCheck {
  bool passed = false;
  std::string failing_clause;  // empty when passed; names the first failing clause
};

/// Checks that a dimension-4 integral cohomology table has the shape
/// H^0 = H^4 = Z, H^1 = 0, H^2 = Z^{n-2}, H^3 pure torsion, and that the
/// order of H^3 divides the (finite) orbifold fundamental group order. The
/// divisibility clause is necessary for a surjection onto H^3 and is vacuous
/// for infinite pi1^orb. The finite-but-nontrivial pi1(|O|) case, which pairs
/// a second torsion group in H_1 with the same bound, is not modeled here.
ProfileCheck validate_cohomology_profile(const GradedGroup& cohomology, std::int64_t n,
                                         Pi1OrbOrder pi1orb_order);

/// Rational Poincare duality: rank(H_k) == rank(H_{n-k}) for all k.
bool rational_duality_check(const GradedGroup& homology);

struct DualityDefect {
  /// Per degree k, the torsion discrepancy between H^{n-k} and H_k (trivial
  /// when they agree as abstract groups). Every degree 0..n has an entry.
  std::map<int, FgAbelianGroup> torsion_defect;
  /// Degrees where free ranks disagree. Kept separate from the defect groups:
  /// rational duality holds for the spaces in scope, so a rank mismatch
  /// signals invalid input rather than a duality failure.
  std::vector<int> rank_mismatch_degrees;

  bool trivial() const;
};

/// Integer Poincare duality defect of a (cohomology, homology) pair graded
/// over the same dimension. The defect at k is the symmetric difference of
/// the primary cyclic decompositions of the torsion of H^{n-k} and H_k.
DualityDefect integer_duality_defect(const GradedGroup& cohomology, const GradedGroup& homology);

struct LensTables {
  GradedGroup homology;
  GradedGroup cohomology;
};

/// Homology (Z, 0, Z_p, 0, Z) and cohomology (Z, 0, 0, Z_p, Z) of the
/// suspension of the lens space L^3(p;q). Requires p >= 2 and gcd(q, p) = 1;
/// the tables do not depend on q.
LensTables lens_suspension_tables(std::int64_t p, std::int64_t q);

}  // namespace orb4::algebra
