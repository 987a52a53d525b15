#include "orb4/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace orb4::algebra {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
  __int128 p = static_cast<__int128>(a) * b;
  if (p > INT64_MAX || p < INT64_MIN) throw std::overflow_error(what);
  return static_cast<std::int64_t>(p);
}

}  // namespace

FgAbelianGroup::FgAbelianGroup(std::int64_t rank, std::vector<std::int64_t> invariant_factors)
    : rank_(rank), torsion_(std::move(invariant_factors)) {
  if (rank_ < 0) throw std::invalid_argument("FgAbelianGroup: rank must be nonnegative");
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2)
      throw std::invalid_argument("FgAbelianGroup: invariant factors must be >= 2, got " +
                                  std::to_string(torsion_[i]));
    if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
      throw std::invalid_argument(
          "FgAbelianGroup: invariant factors must form a divisibility chain; use "
          "normalize_torsion for arbitrary cyclic orders");
  }
}

FgAbelianGroup FgAbelianGroup::free_abelian(std::int64_t rank) { return {rank, {}}; }

FgAbelianGroup FgAbelianGroup::cyclic(std::int64_t order) {
  if (order < 1) throw std::invalid_argument("FgAbelianGroup::cyclic: order must be >= 1");
  if (order == 1) return {};
  return {0, {order}};
}

std::int64_t FgAbelianGroup::torsion_order() const {
  std::int64_t n = 1;
  for (std::int64_t d : torsion_) n = checked_mul(n, d, "FgAbelianGroup::torsion_order overflow");
  return n;
}

std::string FgAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string s;
  if (rank_ == 1) {
    s = "Z";
  } else if (rank_ > 1) {
    s = "Z^" + std::to_string(rank_);
  }
  for (std::int64_t d : torsion_) {
    if (!s.empty()) s += " + ";
    s += "Z_" + std::to_string(d);
  }
  return s;
}

GradedGroup::GradedGroup(int dimension) : dimension_(dimension) {
  if (dimension < 0) throw std::invalid_argument("GradedGroup: dimension must be nonnegative");
  groups_.resize(static_cast<std::size_t>(dimension) + 1);
}

const FgAbelianGroup& GradedGroup::at(int degree) const {
  static const FgAbelianGroup trivial;
  if (degree < 0 || degree > dimension_) return trivial;
  return groups_[static_cast<std::size_t>(degree)];
}

void GradedGroup::set(int degree, FgAbelianGroup group) {
  if (degree < 0 || degree > dimension_)
    throw std::invalid_argument("GradedGroup::set: degree " + std::to_string(degree) +
                                " outside 0.." + std::to_string(dimension_));
  groups_[static_cast<std::size_t>(degree)] = std::move(group);
}

FgAbelianGroup normalize_torsion(std::span<const std::int64_t> orders) {
  std::vector<std::int64_t> v;
  v.reserve(orders.size());
  for (std::int64_t d : orders) {
    if (d < 2)
      throw std::invalid_argument("normalize_torsion: cyclic orders must be >= 2, got " +
                                  std::to_string(d));
    v.push_back(d);
  }
  // Z/a + Z/b = Z/gcd(a,b) + Z/lcm(a,b); repeat until the sorted sequence is
  // a divisibility chain. Each merge strictly increases the largest entry's
  // multiplicity of divisors absorbed, so this terminates quickly for the
  // small inputs that occur here.
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (v[j] % v[i] == 0) continue;
        std::int64_t g = std::gcd(v[i], v[j]);
        std::int64_t l = checked_mul(v[i] / g, v[j], "normalize_torsion: lcm overflow");
        v[i] = g;
        v[j] = l;
        changed = true;
      }
    }
  }
  std::erase(v, 1);
  return {0, std::move(v)};
}

std::int64_t euler_characteristic(const GradedGroup& g) {
  std::int64_t chi = 0;
  for (int k = 0; k <= g.dimension(); ++k) chi += (k % 2 == 0 ? 1 : -1) * g.at(k).rank();
  return chi;
}

GradedGroup universal_coefficients_cohomology(const GradedGroup& homology) {
  if (homology.dimension() < 1)
    throw std::invalid_argument("universal_coefficients_cohomology: need dimension >= 1");
  GradedGroup c(homology.dimension());
  for (int k = 0; k <= homology.dimension(); ++k) {
    std::vector<std::int64_t> torsion = k >= 1 ? homology.at(k - 1).torsion()
                                               : std::vector<std::int64_t>{};
    c.set(k, FgAbelianGroup(homology.at(k).rank(), std::move(torsion)));
  }
  return c;
}

GradedGroup rational_cohomology_profile(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("rational_cohomology_profile: need n >= 2");
  GradedGroup g(4);
  g.set(0, FgAbelianGroup::free_abelian(1));
  g.set(2, FgAbelianGroup::free_abelian(n - 2));
  g.set(4, FgAbelianGroup::free_abelian(1));
  return g;
}

ProfileCheck validate_cohomology_profile(const GradedGroup& cohomology, std::int64_t n,
                                         Pi1OrbOrder pi1orb_order) {
  if (cohomology.dimension() != 4)
    throw std::invalid_argument("validate_cohomology_profile: cohomology must be graded over 0..4");
  if (pi1orb_order && *pi1orb_order < 1)
    throw std::invalid_argument("validate_cohomology_profile: finite pi1^orb order must be >= 1");

  const FgAbelianGroup z = FgAbelianGroup::free_abelian(1);
  if (cohomology.at(0) != z) return {false, "H0 is Z"};
  if (!cohomology.at(1).is_trivial()) return {false, "H1 vanishes"};
  if (cohomology.at(2) != FgAbelianGroup::free_abelian(n - 2)) return {false, "H2 is Z^(n-2)"};
  if (cohomology.at(3).rank() != 0) return {false, "H3 is pure torsion"};
  if (cohomology.at(4) != z) return {false, "H4 is Z"};
  if (pi1orb_order && *pi1orb_order % cohomology.at(3).torsion_order() != 0)
    return {false, "surjection bound"};
  return {true, ""};
}

bool rational_duality_check(const GradedGroup& homology) {
  const int n = homology.dimension();
  for (int k = 0; k <= n; ++k)
    if (homology.at(k).rank() != homology.at(n - k).rank()) return false;
  return true;
}

bool DualityDefect::trivial() const {
  if (!rank_mismatch_degrees.empty()) return false;
  for (const auto& [deg, g] : torsion_defect)
    if (!g.is_trivial()) return false;
  return true;
}

namespace {

// Multiset of prime power factors p^e of a torsion sequence, with counts.
std::map<std::int64_t, int> primary_decomposition(const std::vector<std::int64_t>& torsion) {
  std::map<std::int64_t, int> out;
  for (std::int64_t d : torsion) {
    for (std::int64_t p = 2; p * p <= d; ++p) {
      if (d % p != 0) continue;
      std::int64_t pe = 1;
      while (d % p == 0) {
        d /= p;
        pe *= p;
      }
      ++out[pe];
    }
    if (d > 1) ++out[d];
  }
  return out;
}

}  // namespace

DualityDefect integer_duality_defect(const GradedGroup& cohomology, const GradedGroup& homology) {
  if (cohomology.dimension() != homology.dimension())
    throw std::invalid_argument("integer_duality_defect: graded dimensions differ");
  const int n = cohomology.dimension();

  DualityDefect defect;
  for (int k = 0; k <= n; ++k) {
    const FgAbelianGroup& upper = cohomology.at(n - k);
    const FgAbelianGroup& lower = homology.at(k);
    if (upper.rank() != lower.rank()) defect.rank_mismatch_degrees.push_back(k);

    auto a = primary_decomposition(upper.torsion());
    auto b = primary_decomposition(lower.torsion());
    std::vector<std::int64_t> sym_diff;
    for (const auto& [pe, cnt] : a) {
      int other = b.count(pe) ? b.at(pe) : 0;
      for (int i = 0; i < std::abs(cnt - other); ++i) sym_diff.push_back(pe);
    }
    for (const auto& [pe, cnt] : b)
      if (!a.count(pe))
        for (int i = 0; i < cnt; ++i) sym_diff.push_back(pe);
    defect.torsion_defect.emplace(k, normalize_torsion(sym_diff));
  }
  return defect;
}

LensTables lens_suspension_tables(std::int64_t p, std::int64_t q) {
  if (p < 2) throw std::invalid_argument("lens_suspension_tables: p must be >= 2");
  if (std::gcd(q, p) != 1)
    throw std::invalid_argument("lens_suspension_tables: q must be coprime to p");

  LensTables t{GradedGroup(4), GradedGroup(4)};
  t.homology.set(0, FgAbelianGroup::free_abelian(1));
  t.homology.set(2, FgAbelianGroup::cyclic(p));
  t.homology.set(4, FgAbelianGroup::free_abelian(1));
  t.cohomology.set(0, FgAbelianGroup::free_abelian(1));
  t.cohomology.set(3, FgAbelianGroup::cyclic(p));
  t.cohomology.set(4, FgAbelianGroup::free_abelian(1));
  return t;
}

}  // namespace orb4::algebra
