// Acceptance harness: one self-contained check per shipped guarantee, each
// with a pinned tolerance and a runtime budget. Prints one line per check and
// exits with the number of failures, so it can run under ctest directly.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "orb4/algebra.hpp"
#include "orb4/cli.hpp"
#include "orb4/hitchin.hpp"
#include "orb4/quotgeo.hpp"
#include "orb4/sampling.hpp"
#include "orb4/wps.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& detail) {
  if (!cond) throw Failure(detail);
}

nlohmann::json run_cli(const std::vector<std::string>& args, int expected_exit = 0) {
  std::ostringstream out, err;
  auto with_json = args;
  with_json.push_back("--json");
  const int rc = orb4::cli::run(with_json, out, err);
  require(rc == expected_exit, "cli exit code " + std::to_string(rc) + ", expected " +
                                   std::to_string(expected_exit) + "; stderr: " + err.str());
  return nlohmann::json::parse(out.str());
}

// --------------------------------------------------------------------------
// 1. Stratification table of the reference weighted plane, via the CLI.

void check_stratification_table() {
  const auto j = run_cli({"wps", "info", "--weights", "1,2,4"});
  const auto& strata = j["results"]["strata"];
  require(strata.size() == 4, "expected 4 strata, got " + std::to_string(strata.size()));
  require(strata[0]["kind"] == "vertex" && strata[0]["index"] == 1 && strata[0]["order"] == 2,
          "vertex 1 should carry order 2");
  require(strata[1]["kind"] == "vertex" && strata[1]["index"] == 2 && strata[1]["order"] == 4,
          "vertex 2 should carry order 4");
  require(strata[2]["kind"] == "edge" && strata[2]["order"] == 2 &&
              strata[2]["index_pair"] == nlohmann::json({1, 2}),
          "edge (1,2) should carry order gcd(2,4) = 2");
  require(strata[3]["kind"] == "regular", "last stratum should be regular");
}

// --------------------------------------------------------------------------
// 2. Isotropy weights at the isolated vertex of the reference subaction.

void check_isotropy_reproduction() {
  const auto j = run_cli(
      {"wps", "isotropy", "--weights", "1,2,4", "--action", "1,0,0", "--vertex", "0"});
  require(j["results"]["isotropy_weights"]["k"] == 1 &&
              j["results"]["isotropy_weights"]["l"] == 2,
          "expected weights (1,2), got " + j["results"]["isotropy_weights"].dump());
}

// --------------------------------------------------------------------------
// 3. Product-form law against a brute-force divisor oracle, entries up to 30.

void check_product_form_law() {
  // Oracle on sorted triples, memoized; the tested function is permutation
  // invariant, the oracle input is canonicalized.
  std::map<std::array<std::int64_t, 3>, bool> oracle_cache;
  auto oracle = [&](std::array<std::int64_t, 3> sorted_w) {
    const auto it = oracle_cache.find(sorted_w);
    if (it != oracle_cache.end()) return it->second;
    bool found = false;
    for (std::int64_t a = 1; a <= 30 && !found; ++a)
      for (std::int64_t b = 1; b <= 30 && !found; ++b)
        for (std::int64_t c = 1; c <= 30 && !found; ++c) {
          std::array<std::int64_t, 3> prod = {a * b, a * c, b * c};
          std::sort(prod.begin(), prod.end());
          found = prod == sorted_w;
        }
    oracle_cache.emplace(sorted_w, found);
    return found;
  };

  std::int64_t checked = 0;
  for (std::int64_t l0 = 1; l0 <= 30; ++l0)
    for (std::int64_t l1 = 1; l1 <= 30; ++l1)
      for (std::int64_t l2 = 1; l2 <= 30; ++l2) {
        if (std::gcd(std::gcd(l0, l1), l2) != 1) continue;
        ++checked;
        const orb4::wps::WeightTriple w{l0, l1, l2};
        const auto got = orb4::wps::is_product_form(w);
        std::array<std::int64_t, 3> sorted_w = {l0, l1, l2};
        std::sort(sorted_w.begin(), sorted_w.end());
        const bool expected = oracle(sorted_w);
        require(got.has_value() == expected,
                "mismatch at (" + std::to_string(l0) + "," + std::to_string(l1) + "," +
                    std::to_string(l2) + ")");
        if (got) {
          std::array<std::int64_t, 3> prod = {got->a * got->b, got->a * got->c, got->b * got->c};
          std::sort(prod.begin(), prod.end());
          require(prod == sorted_w, "returned witness does not multiply back");
        }
      }
  require(checked > 20000, "gcd filter left too few triples: " + std::to_string(checked));
}

// --------------------------------------------------------------------------
// 4. Lens suspension tables and their universal-coefficients consistency.

void check_lens_tables() {
  const auto j = run_cli({"cohomology", "lens", "--p", "5"});
  const auto& hom = j["results"]["homology"]["degrees"];
  const auto& coh = j["results"]["cohomology"]["degrees"];
  const std::array<const char*, 5> hom_expected = {"Z", "0", "Z_5", "0", "Z"};
  const std::array<const char*, 5> coh_expected = {"Z", "0", "0", "Z_5", "Z"};
  for (int k = 0; k < 5; ++k) {
    require(hom[k]["display"] == hom_expected[static_cast<std::size_t>(k)],
            "homology degree " + std::to_string(k) + " is " + hom[k]["display"].dump());
    require(coh[k]["display"] == coh_expected[static_cast<std::size_t>(k)],
            "cohomology degree " + std::to_string(k) + " is " + coh[k]["display"].dump());
  }
  require(j["results"]["uct_reproduces_cohomology"] == true,
          "universal coefficients must reproduce the cohomology table");

  const auto tables = orb4::algebra::lens_suspension_tables(5, 2);
  require(orb4::algebra::universal_coefficients_cohomology(tables.homology) == tables.cohomology,
          "library-level universal coefficients disagreement");
}

// --------------------------------------------------------------------------
// 5. Cohomology profile validation: accepts lens tables, rejects the rigged
//    case with torsion too large for the fundamental group.

void check_profile_validation() {
  using namespace orb4::algebra;
  for (const std::int64_t p : {2, 3, 5, 7, 12}) {
    const auto tables = lens_suspension_tables(p, 1);
    const auto res = validate_cohomology_profile(tables.cohomology, 2, Pi1OrbOrder{p});
    require(res.passed, "lens table for p = " + std::to_string(p) + " rejected: '" +
                            res.failing_clause + "'");
  }
  GradedGroup rigged = lens_suspension_tables(2, 1).cohomology;
  rigged.set(3, FgAbelianGroup::cyclic(4));
  const auto res = validate_cohomology_profile(rigged, 2, Pi1OrbOrder{2});
  require(!res.passed, "rigged torsion must be rejected");
  require(res.failing_clause == "surjection bound",
          "rigged case should fail the surjection clause, failed '" + res.failing_clause + "'");
}

// --------------------------------------------------------------------------
// 6. Perimeter bound over the 12-model matrix, plus sharpness.

void check_angle_sum_bound() {
  using orb4::quotgeo::make_model;
  using orb4::quotgeo::QuotientModel;
  const double tol = 1e-6;
  const std::array<std::pair<std::int64_t, std::int64_t>, 4> speeds = {
      {{1, 1}, {1, 2}, {1, 3}, {2, 3}}};
  struct Gamma {
    std::int64_t order, a, b;
  };
  const std::array<Gamma, 3> gammas = {{{1, 0, 0}, {2, 1, 1}, {3, 1, 2}}};

  for (const auto& [k, l] : speeds) {
    for (const auto& g : gammas) {
      const QuotientModel model = make_model(k, l, g.order, g.a, g.b);
      const auto report = orb4::quotgeo::verify_perimeter_bound(model, 10000, 0, tol);
      require(report.passed && report.max_perimeter <= kPi + 3 * tol,
              "model (" + std::to_string(k) + "," + std::to_string(l) + ") x Z" +
                  std::to_string(g.order) + ": max perimeter " +
                  std::to_string(report.max_perimeter));
    }
  }

  // Sharpness: an equally spaced triple on a great circle of the quotient
  // 2-sphere of the (1,1) model has perimeter exactly pi.
  const auto model = make_model(1, 1, 1, 0, 0);
  const double s = 1.0 / std::sqrt(2.0);
  auto lift = [&](double phi) {
    return orb4::quotgeo::OrbitPoint{s * std::exp(std::complex<double>(0.0, phi)), s};
  };
  const double fine_tol = 1e-7;
  const double perimeter =
      orb4::quotgeo::orbit_distance(model, lift(0.0), lift(2.0 * kPi / 3.0), fine_tol) +
      orb4::quotgeo::orbit_distance(model, lift(2.0 * kPi / 3.0), lift(4.0 * kPi / 3.0),
                                    fine_tol) +
      orb4::quotgeo::orbit_distance(model, lift(0.0), lift(4.0 * kPi / 3.0), fine_tol);
  require(std::abs(perimeter - kPi) <= 1e-5,
          "great-circle perimeter " + std::to_string(perimeter) + " not within 1e-5 of pi");
}

// --------------------------------------------------------------------------
// 7. Certified quotient distance against the closed-form round-sphere oracle.

void check_quotient_metric_oracle() {
  const auto model = orb4::quotgeo::make_model(1, 1, 1, 0, 0);
  const double tol = 1e-6;
  for (int trial = 0; trial < 1000; ++trial) {
    orb4::TrialRng rng(1, static_cast<std::uint64_t>(trial));
    const auto za = rng.unit_c2();
    const auto zb = rng.unit_c2();
    const orb4::quotgeo::OrbitPoint x{za[0], za[1]};
    const orb4::quotgeo::OrbitPoint y{zb[0], zb[1]};
    const double m = std::abs(x.z1 * std::conj(y.z1) + x.z2 * std::conj(y.z2));
    const double closed_form = 0.5 * std::acos(std::clamp(2.0 * m * m - 1.0, -1.0, 1.0));
    const double d = orb4::quotgeo::orbit_distance(model, x, y, tol);
    require(std::abs(d - closed_form) <= 2e-6,
            "trial " + std::to_string(trial) + ": distance " + std::to_string(d) +
                " vs closed form " + std::to_string(closed_form));
  }
}

// --------------------------------------------------------------------------
// 8. Toponogov witness angle sums for three weight triples.

void check_toponogov_witness() {
  using orb4::wps::make_weights;
  const double tol = 1e-7;
  const std::array<std::pair<orb4::wps::WeightTriple, orb4::wps::CircleWeightVector>, 3> cases = {
      {{make_weights(1, 1, 1), {0, 1, 2}},
       {make_weights(1, 2, 4), {1, 1, 1}},
       {make_weights(3, 5, 7), {1, 1, 1}}}};
  for (const auto& [w, m] : cases) {
    require(orb4::wps::fixed_point_set(w, m).kind ==
                orb4::wps::FixedPointData::Kind::ThreeVertices,
            "test action must fix three isolated vertices");
    const auto witness = orb4::wps::toponogov_witness(w, m, tol);
    require(witness.angle_sum > kPi + 1e-3,
            "angle sum " + std::to_string(witness.angle_sum) + " not above pi + 1e-3");
  }
  const auto octant = orb4::wps::toponogov_witness(make_weights(1, 1, 1), {0, 1, 2}, tol);
  require(std::abs(octant.angle_sum - 1.5 * kPi) <= 1e-6,
          "octant angle sum " + std::to_string(octant.angle_sum) + " not 3 pi / 2");
}

// --------------------------------------------------------------------------
// 9. Euler characteristic bookkeeping over randomized subactions.

void check_euler_bookkeeping() {
  int checked = 0;
  for (std::uint64_t trial = 0; checked < 100; ++trial) {
    require(trial < 4000, "not enough valid random configurations");
    orb4::TrialRng rng(2, trial);
    const auto draw = [&](std::int64_t lo, std::int64_t hi) {
      return lo + static_cast<std::int64_t>(rng.uniform() * static_cast<double>(hi - lo + 1));
    };
    const std::int64_t l0 = draw(1, 20), l1 = draw(1, 20), l2 = draw(1, 20);
    if (std::gcd(std::gcd(l0, l1), l2) != 1) continue;
    const orb4::wps::WeightTriple w{l0, l1, l2};
    const orb4::wps::CircleWeightVector m{draw(-20, 20), draw(-20, 20), draw(-20, 20)};
    // Skip trivial subactions; they are rejected by contract.
    if (m.m0 % l0 == 0 && m.m1 == (m.m0 / l0) * l1 && m.m2 == (m.m0 / l0) * l2) continue;
    require(orb4::wps::kobayashi_check(w, m), "bookkeeping failed for a valid configuration");
    ++checked;
  }
}

// --------------------------------------------------------------------------
// 10. Hitchin model: fixed points, slice range, weighted rotation pair.

void check_hitchin_model() {
  const double s6 = std::sqrt(6.0);

  double max_dev = 0.0;
  const auto [plus, minus] = orb4::hitchin::fixed_points();
  for (int i = 0; i < 100; ++i) {
    orb4::TrialRng rng(3, static_cast<std::uint64_t>(i));
    const double theta = rng.uniform() * 2.0 * kPi;
    for (const auto* m : {&plus, &minus}) {
      const auto moved = orb4::hitchin::s1_act(theta, *m);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          max_dev = std::max(max_dev, std::abs(moved(r, c) - (*m)(r, c)));
    }
  }
  require(max_dev <= 1e-12, "fixed points moved by " + std::to_string(max_dev));

  const auto range = orb4::hitchin::singular_slice_range(1e-3, 10000);
  require(std::abs(range.analytic_lo - (-2.0 / s6)) <= 1e-9 &&
              std::abs(range.analytic_hi - 1.0 / s6) <= 1e-9,
          "analytic slice range off: [" + std::to_string(range.analytic_lo) + ", " +
              std::to_string(range.analytic_hi) + "]");
  require(range.passed, "sampled slice range missed an endpoint by more than 1e-3");

  const auto phi = orb4::hitchin::verify_phi12(1000, 1e-9, 0);
  require(phi.passed, "weighted rotation pair deviated by " + std::to_string(phi.max_deviation));
}

// --------------------------------------------------------------------------
// 11. Invariance of fixed-point and isotropy data under weight-vector shifts.

void check_shift_invariance() {
  int checked = 0;
  for (std::uint64_t trial = 0; checked < 200; ++trial) {
    require(trial < 8000, "not enough valid random configurations");
    orb4::TrialRng rng(4, trial);
    const auto draw = [&](std::int64_t lo, std::int64_t hi) {
      return lo + static_cast<std::int64_t>(rng.uniform() * static_cast<double>(hi - lo + 1));
    };
    const std::int64_t l0 = draw(1, 9), l1 = draw(1, 9), l2 = draw(1, 9);
    if (std::gcd(std::gcd(l0, l1), l2) != 1) continue;
    const orb4::wps::WeightTriple w{l0, l1, l2};
    const orb4::wps::CircleWeightVector m{draw(-9, 9), draw(-9, 9), draw(-9, 9)};
    if (m.m0 % l0 == 0 && m.m1 == (m.m0 / l0) * l1 && m.m2 == (m.m0 / l0) * l2) continue;
    ++checked;

    const auto base_fixed = orb4::wps::fixed_point_set(w, m);
    std::array<std::optional<orb4::wps::IsotropyRep>, 3> base_isotropy;
    for (int v = 0; v < 3; ++v) {
      try {
        base_isotropy[static_cast<std::size_t>(v)] = orb4::wps::isotropy_weights(w, m, v);
      } catch (const std::domain_error&) {
        // vertex on a fixed sphere; the shifted action must agree on that too
      }
    }

    for (std::int64_t t = -3; t <= 3; ++t) {
      const orb4::wps::CircleWeightVector shifted{m.m0 + t * l0, m.m1 + t * l1, m.m2 + t * l2};
      require(orb4::wps::fixed_point_set(w, shifted) == base_fixed,
              "fixed point set changed under shift t = " + std::to_string(t));
      for (int v = 0; v < 3; ++v) {
        std::optional<orb4::wps::IsotropyRep> shifted_isotropy;
        try {
          shifted_isotropy = orb4::wps::isotropy_weights(w, shifted, v);
        } catch (const std::domain_error&) {
        }
        require(shifted_isotropy == base_isotropy[static_cast<std::size_t>(v)],
                "isotropy at vertex " + std::to_string(v) + " changed under shift t = " +
                    std::to_string(t));
      }
    }
  }
}

// --------------------------------------------------------------------------

struct Criterion {
  std::string name;
  double time_limit_sec;
  std::function<void()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"stratification table", 1.0, check_stratification_table},
      {"isotropy reproduction", 1.0, check_isotropy_reproduction},
      {"product-form law", 30.0, check_product_form_law},
      {"lens suspension tables", 1.0, check_lens_tables},
      {"cohomology profile validation", 1.0, check_profile_validation},
      {"perimeter bound matrix", 300.0, check_angle_sum_bound},
      {"quotient metric oracle", 30.0, check_quotient_metric_oracle},
      {"toponogov witness", 60.0, check_toponogov_witness},
      {"euler characteristic bookkeeping", 5.0, check_euler_bookkeeping},
      {"hitchin fixed points and slice", 60.0, check_hitchin_model},
      {"shift invariance", 10.0, check_shift_invariance},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      c.run();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && elapsed > c.time_limit_sec) {
      ok = false;
      detail = "exceeded the " + std::to_string(c.time_limit_sec) + " s budget";
    }
    std::ostringstream line;
    line << (ok ? "[PASS] " : "[FAIL] ") << (i + 1) << ". " << c.name << " (" << std::fixed;
    line.precision(2);
    line << elapsed << " s)";
    if (!ok) line << ": " << detail;
    std::cout << line.str() << "\n";
    if (!ok) ++failures;
  }
  if (failures == 0)
    std::cout << "all " << criteria.size() << " acceptance criteria passed\n";
  else
    std::cout << failures << " acceptance criteria failed\n";
  return failures;
}
