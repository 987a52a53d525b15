#include "orb4/cli.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "orb4/algebra.hpp"
#include "orb4/hitchin.hpp"
#include "orb4/quotgeo.hpp"
#include "orb4/sampling.hpp"
#include "orb4/wps.hpp"

namespace orb4::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kMetricTol = 1e-6;
constexpr double kAlgebraicTol = 1e-9;

// ---------------------------------------------------------------------------
// flag parsing helpers

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t idx = 0;
    const std::int64_t v = std::stoll(s, &idx);
    if (idx != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": '" + s + "' is not an integer");
  }
}

double parse_real(const std::string& s, const std::string& what) {
  try {
    std::size_t idx = 0;
    const double v = std::stod(s, &idx);
    if (idx != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": '" + s + "' is not a real number");
  }
}

std::array<std::int64_t, 3> parse_int_triple(const std::string& s, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() != 3)
    throw std::invalid_argument(what + ": expected three comma-separated integers, got '" + s +
                                "'");
  return {parse_int(parts[0], what), parse_int(parts[1], what), parse_int(parts[2], what)};
}

std::array<std::int64_t, 2> parse_int_pair(const std::string& s, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() != 2)
    throw std::invalid_argument(what + ": expected two comma-separated integers, got '" + s + "'");
  return {parse_int(parts[0], what), parse_int(parts[1], what)};
}

// "re,im;re,im;..." with exactly n coordinates.
std::vector<std::complex<double>> parse_complex_vector(const std::string& s, std::size_t n,
                                                       const std::string& what) {
  const auto coords = split(s, ';');
  if (coords.size() != n)
    throw std::invalid_argument(what + ": expected " + std::to_string(n) +
                                " semicolon-separated coordinates, got '" + s + "'");
  std::vector<std::complex<double>> out;
  for (const auto& c : coords) {
    const auto parts = split(c, ',');
    if (parts.size() != 2)
      throw std::invalid_argument(what + ": coordinate '" + c + "' is not a re,im pair");
    out.emplace_back(parse_real(parts[0], what), parse_real(parts[1], what));
  }
  return out;
}

// ---------------------------------------------------------------------------
// report building

ojson group_json(const algebra::FgAbelianGroup& g) {
  return {{"rank", g.rank()}, {"torsion", g.torsion()}, {"display", g.to_string()}};
}

ojson graded_json(const algebra::GradedGroup& g) {
  ojson degrees = ojson::array();
  for (int k = 0; k <= g.dimension(); ++k) degrees.push_back(group_json(g.at(k)));
  return {{"dimension", g.dimension()}, {"degrees", degrees}};
}

ojson complex_json(const std::complex<double>& z) { return ojson::array({z.real(), z.imag()}); }

ojson orbit_point_json(const quotgeo::OrbitPoint& p) {
  return ojson::array({complex_json(p.z1), complex_json(p.z2)});
}

ojson matrix_json(const hitchin::SymTraceless3& m) {
  ojson rows = ojson::array();
  for (int i = 0; i < 3; ++i) rows.push_back(ojson::array({m(i, 0), m(i, 1), m(i, 2)}));
  return rows;
}

ojson fixed_point_json(const wps::FixedPointData& f) {
  if (f.kind == wps::FixedPointData::Kind::ThreeVertices)
    return {{"kind", "three-vertices"}, {"vertices", {0, 1, 2}}};
  return {{"kind", "vertex-and-sphere"},
          {"isolated_vertex", f.isolated_vertex},
          {"fixed_sphere_coordinate", f.isolated_vertex}};
}

/// Verification block: max_violation is the signed excess over the allowed
/// limit, so any positive value means the check failed.
ojson verification_json(bool passed, double max_violation, std::int64_t trials,
                        std::uint64_t seed) {
  return {{"passed", passed},
          {"max_violation", max_violation},
          {"trials", trials},
          {"seed", seed}};
}

struct Outcome {
  ojson report;
  std::optional<bool> passed;  // engaged when a verification ran
};

ojson report_skeleton(const std::string& command, ojson inputs) {
  ojson r;
  r["schema"] = "orb4kit/1";
  r["command"] = command;
  r["inputs"] = std::move(inputs);
  return r;
}

// ---------------------------------------------------------------------------
// human-readable rendering: same values as the JSON, YAML-like layout

bool inlineable(const ojson& v) {
  if (v.is_object()) return v.empty();
  if (v.is_array()) {
    for (const auto& e : v)
      if (!inlineable(e)) return false;
    return true;
  }
  return true;
}

void render_inline(std::ostream& out, const ojson& v) {
  if (v.is_string())
    out << v.get<std::string>();
  else
    out << v.dump();
}

void render_text(std::ostream& out, const ojson& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      out << pad << it.key() << ":";
      if (inlineable(it.value())) {
        out << " ";
        render_inline(out, it.value());
        out << "\n";
      } else {
        out << "\n";
        render_text(out, it.value(), indent + 1);
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (inlineable(e)) {
        out << pad << "- ";
        render_inline(out, e);
        out << "\n";
      } else {
        out << pad << "-\n";
        render_text(out, e, indent + 1);
      }
    }
  } else {
    out << pad;
    render_inline(out, j);
    out << "\n";
  }
}

// ---------------------------------------------------------------------------
// shared option bundles

struct WpsArgs {
  std::string weights;
  std::string action;
  int vertex = 0;
  std::string p, q;
  double tol = kMetricTol;
  double threshold = 0.0;  // 0 means "use the default"
};

struct CohomArgs {
  std::int64_t p = 0;
  std::int64_t q = 1;
  std::string ranks;
  std::vector<std::string> torsion;
  std::string homology_ranks;
  std::vector<std::string> homology_torsion;
  std::int64_t n = 2;
  std::int64_t pi1orb_order = 1;
  bool pi1orb_infinite = false;
};

struct AngleSumArgs {
  std::int64_t k = 1, l = 1;
  std::int64_t gamma_order = 1;
  std::string gamma_exp = "0,0";
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  double tol = kMetricTol;
  double threshold = 0.0;
};

struct HitchinArgs {
  std::int64_t samples = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  double h = 0.0;
  std::int64_t orbifold_k = 0;  // 0 = no tag requested
  std::string orbifold_side = "positive";
};

// Graded group from "--ranks r0,...,rn" plus repeated "--torsion DEG:d1,d2".
// Torsion lists are normalized to invariant factors on the way in.
algebra::GradedGroup parse_graded(const std::string& ranks_flag,
                                  const std::vector<std::string>& torsion_flags,
                                  const std::string& what) {
  const auto rank_parts = split(ranks_flag, ',');
  if (rank_parts.empty())
    throw std::invalid_argument(what + ": empty rank list");
  algebra::GradedGroup g(static_cast<int>(rank_parts.size()) - 1);
  std::vector<std::vector<std::int64_t>> torsion(rank_parts.size());
  for (const auto& t : torsion_flags) {
    const auto pos = t.find(':');
    if (pos == std::string::npos)
      throw std::invalid_argument(what + ": torsion entry '" + t + "' must look like DEG:d1,d2");
    const std::int64_t deg = parse_int(t.substr(0, pos), what + " torsion degree");
    if (deg < 0 || deg > g.dimension())
      throw std::invalid_argument(what + ": torsion degree out of range");
    for (const auto& d : split(t.substr(pos + 1), ','))
      torsion[static_cast<std::size_t>(deg)].push_back(parse_int(d, what + " torsion factor"));
  }
  for (std::size_t k = 0; k < rank_parts.size(); ++k) {
    const std::int64_t rank = parse_int(rank_parts[k], what + " rank");
    const algebra::FgAbelianGroup normalized = algebra::normalize_torsion(torsion[k]);
    g.set(static_cast<int>(k), algebra::FgAbelianGroup(rank, normalized.torsion()));
  }
  return g;
}

ojson orbifold_tag_json(const HitchinArgs& a) {
  const hitchin::HitchinOrbifoldTag tag{
      a.orbifold_k, a.orbifold_side == "positive"
                        ? hitchin::HitchinOrbifoldTag::Side::RepeatedPositive
                        : hitchin::HitchinOrbifoldTag::Side::RepeatedNegative};
  return {{"k", tag.k},
          {"side", tag.side == hitchin::HitchinOrbifoldTag::Side::RepeatedPositive
                       ? "repeated-positive"
                       : "repeated-negative"},
          {"note",
           "metadata only; the cone metric along the singular projective plane is not modeled"}};
}

// ---------------------------------------------------------------------------
// subcommand handlers

Outcome do_wps_info(const WpsArgs& a) {
  const auto w3 = parse_int_triple(a.weights, "--weights");
  const wps::WeightTriple w = wps::make_weights(w3[0], w3[1], w3[2]);

  ojson strata = ojson::array();
  for (const wps::Stratum& s : wps::stratification(w)) {
    switch (s.kind) {
      case wps::Stratum::Kind::Vertex:
        strata.push_back({{"kind", "vertex"}, {"index", s.i}, {"order", s.group_order}});
        break;
      case wps::Stratum::Kind::Edge:
        strata.push_back(
            {{"kind", "edge"}, {"index_pair", {s.i, s.j}}, {"order", s.group_order}});
        break;
      case wps::Stratum::Kind::Regular:
        strata.push_back({{"kind", "regular"}, {"order", s.group_order}});
        break;
    }
  }

  Outcome o;
  o.report = report_skeleton("wps info", {{"weights", w3}});
  ojson& res = o.report["results"];
  res["strata"] = strata;
  const auto pf = wps::is_product_form(w);
  res["product_form"] = pf ? ojson{{"a", pf->a}, {"b", pf->b}, {"c", pf->c}} : ojson(nullptr);
  res["underlying_space_smooth"] = pf.has_value();
  const algebra::GradedGroup coh = wps::wps_cohomology(w);
  res["cohomology"] = graded_json(coh);
  res["euler_characteristic"] = algebra::euler_characteristic(coh);
  return o;
}

Outcome do_wps_fixed(const WpsArgs& a) {
  const auto w3 = parse_int_triple(a.weights, "--weights");
  const auto m3 = parse_int_triple(a.action, "--action");
  const wps::WeightTriple w = wps::make_weights(w3[0], w3[1], w3[2]);
  const wps::FixedPointData f = wps::fixed_point_set(w, {m3[0], m3[1], m3[2]});

  Outcome o;
  o.report = report_skeleton("wps fixed", {{"weights", w3}, {"action", m3}});
  o.report["results"]["fixed_point_set"] = fixed_point_json(f);
  return o;
}

Outcome do_wps_isotropy(const WpsArgs& a) {
  const auto w3 = parse_int_triple(a.weights, "--weights");
  const auto m3 = parse_int_triple(a.action, "--action");
  const wps::WeightTriple w = wps::make_weights(w3[0], w3[1], w3[2]);
  const wps::IsotropyRep rep = wps::isotropy_weights(w, {m3[0], m3[1], m3[2]}, a.vertex);

  Outcome o;
  o.report = report_skeleton("wps isotropy",
                             {{"weights", w3}, {"action", m3}, {"vertex", a.vertex}});
  o.report["results"]["isotropy_weights"] = {{"k", rep.k}, {"l", rep.l}};
  return o;
}

Outcome do_wps_distance(const WpsArgs& a) {
  const auto w3 = parse_int_triple(a.weights, "--weights");
  const wps::WeightTriple w = wps::make_weights(w3[0], w3[1], w3[2]);
  const auto pv = parse_complex_vector(a.p, 3, "--p");
  const auto qv = parse_complex_vector(a.q, 3, "--q");
  const std::array<std::complex<double>, 3> p{pv[0], pv[1], pv[2]};
  const std::array<std::complex<double>, 3> q{qv[0], qv[1], qv[2]};
  const double d = wps::wps_distance(w, p, q, a.tol);

  Outcome o;
  o.report = report_skeleton(
      "wps distance", {{"weights", w3},
                       {"p", {complex_json(p[0]), complex_json(p[1]), complex_json(p[2])}},
                       {"q", {complex_json(q[0]), complex_json(q[1]), complex_json(q[2])}},
                       {"tol", a.tol}});
  o.report["results"]["distance"] = d;
  return o;
}

Outcome do_wps_toponogov(const WpsArgs& a) {
  const auto w3 = parse_int_triple(a.weights, "--weights");
  const auto m3 = parse_int_triple(a.action, "--action");
  const wps::WeightTriple w = wps::make_weights(w3[0], w3[1], w3[2]);
  const wps::ToponogovWitness witness = wps::toponogov_witness(w, {m3[0], m3[1], m3[2]}, a.tol);
  // The curvature bound forces the comparison angles to sum to more than pi;
  // numerically we assert sum > threshold with threshold defaulting to
  // pi - tol.
  const double threshold = a.threshold > 0.0 ? a.threshold : std::numbers::pi - a.tol;
  const bool passed = witness.angle_sum > threshold;

  Outcome o;
  o.report = report_skeleton(
      "wps toponogov",
      {{"weights", w3}, {"action", m3}, {"tol", a.tol}, {"threshold", threshold}});
  ojson& res = o.report["results"];
  res["sides"] = witness.sides;
  res["angles"] = witness.angles;
  res["angle_sum"] = witness.angle_sum;
  o.report["verification"] = verification_json(passed, threshold - witness.angle_sum, 0, 0);
  o.passed = passed;
  return o;
}

Outcome do_wps_kobayashi(const WpsArgs& a) {
  const auto w3 = parse_int_triple(a.weights, "--weights");
  const auto m3 = parse_int_triple(a.action, "--action");
  const wps::WeightTriple w = wps::make_weights(w3[0], w3[1], w3[2]);
  const wps::CircleWeightVector m{m3[0], m3[1], m3[2]};
  const wps::FixedPointData f = wps::fixed_point_set(w, m);
  // Three points, or one point plus a 2-sphere of chi = 2.
  const std::int64_t chi_fixed =
      f.kind == wps::FixedPointData::Kind::ThreeVertices ? 3 : 1 + 2;
  const std::int64_t chi_space = algebra::euler_characteristic(wps::wps_cohomology(w));
  const bool passed = wps::kobayashi_check(w, m);

  Outcome o;
  o.report = report_skeleton("wps kobayashi", {{"weights", w3}, {"action", m3}});
  ojson& res = o.report["results"];
  res["fixed_point_set"] = fixed_point_json(f);
  res["chi_fixed"] = chi_fixed;
  res["chi_space"] = chi_space;
  o.report["verification"] =
      verification_json(passed, static_cast<double>(std::abs(chi_fixed - chi_space)), 0, 0);
  o.passed = passed;
  return o;
}

Outcome do_cohomology_lens(const CohomArgs& a) {
  const algebra::LensTables tables = algebra::lens_suspension_tables(a.p, a.q);
  const bool uct_ok =
      algebra::universal_coefficients_cohomology(tables.homology) == tables.cohomology;

  Outcome o;
  o.report = report_skeleton("cohomology lens", {{"p", a.p}, {"q", a.q}});
  ojson& res = o.report["results"];
  res["homology"] = graded_json(tables.homology);
  res["cohomology"] = graded_json(tables.cohomology);
  res["uct_reproduces_cohomology"] = uct_ok;
  res["euler_characteristic"] = algebra::euler_characteristic(tables.homology);
  return o;
}

Outcome do_cohomology_validate_top(const CohomArgs& a) {
  algebra::GradedGroup cohomology(4);
  std::int64_t n = a.n;
  algebra::Pi1OrbOrder order;
  ojson inputs;
  if (a.p > 0) {
    // Shortcut: validate the lens-suspension cohomology at its own n and
    // pi1^orb order p.
    cohomology = algebra::lens_suspension_tables(a.p, a.q).cohomology;
    n = 2;
    order = a.p;
    inputs = {{"lens_p", a.p}, {"n", n}, {"pi1orb_order", a.p}};
  } else {
    if (a.ranks.empty())
      throw std::invalid_argument("cohomology validate-top needs --lens-p or --ranks/--torsion");
    cohomology = parse_graded(a.ranks, a.torsion, "--ranks/--torsion");
    if (cohomology.dimension() != 4)
      throw std::invalid_argument("--ranks must list exactly five degrees for a 4-space");
    if (!a.pi1orb_infinite) order = a.pi1orb_order;
    inputs = {{"ranks", split(a.ranks, ',')},
              {"torsion", a.torsion},
              {"n", n},
              {"pi1orb_order", a.pi1orb_infinite ? ojson(nullptr) : ojson(a.pi1orb_order)}};
  }

  const algebra::ProfileCheck check = algebra::validate_cohomology_profile(cohomology, n, order);

  Outcome o;
  o.report = report_skeleton("cohomology validate-top", std::move(inputs));
  ojson& res = o.report["results"];
  res["cohomology"] = graded_json(cohomology);
  res["passed"] = check.passed;
  res["failing_clause"] = check.failing_clause;
  o.report["verification"] = verification_json(check.passed, check.passed ? 0.0 : 1.0, 0, 0);
  o.passed = check.passed;
  return o;
}

Outcome do_cohomology_duality(const CohomArgs& a) {
  algebra::GradedGroup cohomology(4), homology(4);
  ojson inputs;
  if (a.p > 0) {
    const algebra::LensTables tables = algebra::lens_suspension_tables(a.p, a.q);
    cohomology = tables.cohomology;
    homology = tables.homology;
    inputs = {{"lens_p", a.p}, {"q", a.q}};
  } else {
    if (a.ranks.empty() || a.homology_ranks.empty())
      throw std::invalid_argument(
          "cohomology duality needs --lens-p or both --ranks/--torsion (cohomology) and "
          "--homology-ranks/--homology-torsion");
    cohomology = parse_graded(a.ranks, a.torsion, "--ranks/--torsion");
    homology = parse_graded(a.homology_ranks, a.homology_torsion,
                            "--homology-ranks/--homology-torsion");
    inputs = {{"ranks", split(a.ranks, ',')},
              {"torsion", a.torsion},
              {"homology_ranks", split(a.homology_ranks, ',')},
              {"homology_torsion", a.homology_torsion}};
  }

  const algebra::DualityDefect defect = algebra::integer_duality_defect(cohomology, homology);

  Outcome o;
  o.report = report_skeleton("cohomology duality", std::move(inputs));
  ojson& res = o.report["results"];
  res["rational_duality"] = algebra::rational_duality_check(homology);
  ojson defect_json = ojson::object();
  for (const auto& [deg, g] : defect.torsion_defect) defect_json[std::to_string(deg)] = group_json(g);
  res["torsion_defect"] = defect_json;
  res["rank_mismatch_degrees"] = defect.rank_mismatch_degrees;
  res["defect_trivial"] = defect.trivial();
  return o;
}

Outcome do_verify_angle_sum(const AngleSumArgs& a) {
  const auto exps = parse_int_pair(a.gamma_exp, "--gamma-exp");
  const quotgeo::QuotientModel model =
      quotgeo::make_model(a.k, a.l, a.gamma_order, exps[0], exps[1]);
  const quotgeo::PerimeterReport rep =
      quotgeo::verify_perimeter_bound(model, a.trials, a.seed, a.tol, a.threshold);

  Outcome o;
  o.report = report_skeleton("verify angle-sum", {{"k", a.k},
                                                  {"l", a.l},
                                                  {"gamma_order", a.gamma_order},
                                                  {"gamma_exp", exps},
                                                  {"trials", a.trials},
                                                  {"seed", a.seed},
                                                  {"tol", a.tol},
                                                  {"threshold", rep.threshold}});
  ojson& res = o.report["results"];
  res["max_perimeter"] = rep.max_perimeter;
  res["threshold"] = rep.threshold;
  res["witness_trial"] = rep.witness_trial;
  res["witness"] = {orbit_point_json(rep.witness[0]), orbit_point_json(rep.witness[1]),
                    orbit_point_json(rep.witness[2])};
  o.report["verification"] =
      verification_json(rep.passed, rep.max_perimeter - rep.threshold, rep.trials, rep.seed);
  o.passed = rep.passed;
  return o;
}

Outcome do_hitchin_fixed_points(const HitchinArgs& a) {
  if (a.samples < 1) throw std::invalid_argument("--samples must be >= 1");
  if (a.tol <= 0.0) throw std::invalid_argument("--tol must be positive");
  const auto [plus, minus] = hitchin::fixed_points();

  double max_dev = 0.0;
  for (std::int64_t i = 0; i < a.samples; ++i) {
    TrialRng rng(a.seed, static_cast<std::uint64_t>(i));
    const double theta = rng.uniform() * 2.0 * std::numbers::pi;
    for (const hitchin::SymTraceless3* m : {&plus, &minus}) {
      const hitchin::SymTraceless3 moved = hitchin::s1_act(theta, *m);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          max_dev = std::max(max_dev, std::abs(moved(r, c) - (*m)(r, c)));
    }
  }
  const bool passed = max_dev <= a.tol;

  Outcome o;
  o.report = report_skeleton("hitchin fixed-points",
                             {{"samples", a.samples}, {"tol", a.tol}, {"seed", a.seed}});
  ojson& res = o.report["results"];
  res["fixed_point_repeated_positive"] = matrix_json(plus);
  res["fixed_point_repeated_negative"] = matrix_json(minus);
  res["max_deviation"] = max_dev;
  if (a.orbifold_k > 0) res["orbifold_tag"] = orbifold_tag_json(a);
  o.report["verification"] =
      verification_json(passed, max_dev - a.tol, a.samples, a.seed);
  o.passed = passed;
  return o;
}

Outcome do_hitchin_slice_range(const HitchinArgs& a) {
  const hitchin::SliceRangeReport rep = hitchin::singular_slice_range(a.tol, a.samples, a.seed);

  Outcome o;
  o.report = report_skeleton("hitchin slice-range",
                             {{"tol", a.tol}, {"samples", a.samples}, {"seed", a.seed}});
  ojson& res = o.report["results"];
  res["analytic"] = {rep.analytic_lo, rep.analytic_hi};
  res["sampled"] = {rep.sampled_lo, rep.sampled_hi};
  res["endpoint_gaps"] = {rep.sampled_lo - rep.analytic_lo, rep.analytic_hi - rep.sampled_hi};
  if (a.orbifold_k > 0) res["orbifold_tag"] = orbifold_tag_json(a);
  const double containment = std::max(rep.analytic_lo - rep.sampled_lo,
                                      rep.sampled_hi - rep.analytic_hi);
  const double endpoint_gap = std::max(rep.sampled_lo - rep.analytic_lo,
                                       rep.analytic_hi - rep.sampled_hi);
  o.report["verification"] = verification_json(
      rep.passed, std::max(endpoint_gap - a.tol, containment), a.samples, a.seed);
  o.passed = rep.passed;
  return o;
}

Outcome do_hitchin_slice_orbit(const HitchinArgs& a) {
  const hitchin::SliceOrbitReport rep =
      hitchin::slice_orbit_uniqueness(a.h, a.samples, a.tol, a.seed);

  Outcome o;
  o.report = report_skeleton(
      "hitchin slice-orbit",
      {{"h", a.h}, {"samples", a.samples}, {"tol", a.tol}, {"seed", a.seed}});
  ojson& res = o.report["results"];
  res["max_orbit_distance"] = rep.max_orbit_distance;
  if (a.orbifold_k > 0) res["orbifold_tag"] = orbifold_tag_json(a);
  o.report["verification"] =
      verification_json(rep.passed, rep.max_orbit_distance - a.tol, a.samples, a.seed);
  o.passed = rep.passed;
  return o;
}

Outcome do_hitchin_verify_phi12(const HitchinArgs& a) {
  const hitchin::Phi12Report rep = hitchin::verify_phi12(a.samples, a.tol, a.seed);

  Outcome o;
  o.report = report_skeleton("hitchin verify-phi12",
                             {{"samples", a.samples}, {"tol", a.tol}, {"seed", a.seed}});
  ojson& res = o.report["results"];
  res["max_deviation"] = rep.max_deviation;
  res["weight_assignment"] = {{"pair_tb", 2}, {"pair_cd", 1}};
  if (a.orbifold_k > 0) res["orbifold_tag"] = orbifold_tag_json(a);
  o.report["verification"] =
      verification_json(rep.passed, rep.max_deviation - a.tol, a.samples, a.seed);
  o.passed = rep.passed;
  return o;
}

void add_orbifold_tag_flags(CLI::App* sub, HitchinArgs& args) {
  sub->add_option("--orbifold-k", args.orbifold_k,
                  "attach orbifold metadata: cone order k along the singular projective plane")
      ->check(CLI::PositiveNumber);
  sub->add_option("--orbifold-side", args.orbifold_side,
                  "which singular plane carries the cone order")
      ->check(CLI::IsMember({"positive", "negative"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"orb4kit: invariants and metric checks for compact 4-orbifold families"};
  app.require_subcommand(1);
  bool json_mode = false;
  app.add_flag("--json", json_mode, "emit the report as a single JSON object");
  app.fallthrough();

  std::optional<Outcome> outcome;

  // wps ---------------------------------------------------------------
  CLI::App* wps_app = app.add_subcommand("wps", "weighted projective plane invariants");
  wps_app->require_subcommand(1);
  wps_app->fallthrough();
  auto wps_args = std::make_shared<WpsArgs>();

  auto add_weights = [&](CLI::App* sub) {
    sub->add_option("--weights", wps_args->weights, "weight triple, e.g. 1,2,4")->required();
    sub->fallthrough();
  };
  auto add_action = [&](CLI::App* sub) {
    sub->add_option("--action", wps_args->action, "subaction speed triple, e.g. 1,0,0")
        ->required();
  };

  CLI::App* wps_info = wps_app->add_subcommand(
      "info", "stratification, product form, cohomology, Euler characteristic");
  add_weights(wps_info);
  wps_info->callback([&outcome, wps_args] { outcome = do_wps_info(*wps_args); });

  CLI::App* wps_fixed =
      wps_app->add_subcommand("fixed", "fixed point set of a circle subaction");
  add_weights(wps_fixed);
  add_action(wps_fixed);
  wps_fixed->callback([&outcome, wps_args] { outcome = do_wps_fixed(*wps_args); });

  CLI::App* wps_isotropy =
      wps_app->add_subcommand("isotropy", "local isotropy weights at an isolated fixed vertex");
  add_weights(wps_isotropy);
  add_action(wps_isotropy);
  wps_isotropy->add_option("--vertex", wps_args->vertex, "vertex index 0, 1 or 2")->required();
  wps_isotropy->callback([&outcome, wps_args] { outcome = do_wps_isotropy(*wps_args); });

  CLI::App* wps_distance =
      wps_app->add_subcommand("distance", "certified quotient distance between two orbits");
  add_weights(wps_distance);
  wps_distance
      ->add_option("--p", wps_args->p, "first unit vector of C^3 as re,im;re,im;re,im")
      ->required();
  wps_distance
      ->add_option("--q", wps_args->q, "second unit vector of C^3 as re,im;re,im;re,im")
      ->required();
  wps_distance->add_option("--tol", wps_args->tol, "certified distance tolerance")
      ->capture_default_str();
  wps_distance->callback([&outcome, wps_args] { outcome = do_wps_distance(*wps_args); });

  CLI::App* wps_topo = wps_app->add_subcommand(
      "toponogov", "comparison angles of the vertex triangle and their sum");
  add_weights(wps_topo);
  add_action(wps_topo);
  wps_topo->add_option("--tol", wps_args->tol, "distance tolerance")->capture_default_str();
  wps_topo->add_option("--threshold", wps_args->threshold,
                       "assert angle sum > threshold (default pi - tol)");
  wps_topo->callback([&outcome, wps_args] { outcome = do_wps_toponogov(*wps_args); });

  CLI::App* wps_kob = wps_app->add_subcommand(
      "kobayashi", "Euler characteristic of the fixed set vs the whole space");
  add_weights(wps_kob);
  add_action(wps_kob);
  wps_kob->callback([&outcome, wps_args] { outcome = do_wps_kobayashi(*wps_args); });

  // cohomology ---------------------------------------------------------
  CLI::App* coh_app = app.add_subcommand("cohomology", "graded group tables and duality checks");
  coh_app->require_subcommand(1);
  coh_app->fallthrough();
  auto coh_args = std::make_shared<CohomArgs>();

  CLI::App* coh_lens =
      coh_app->add_subcommand("lens", "homology and cohomology of a lens-space suspension");
  coh_lens->fallthrough();
  coh_lens->add_option("--p", coh_args->p, "lens order p >= 2")->required();
  coh_lens->add_option("--q", coh_args->q, "lens twisting, coprime to p")->capture_default_str();
  coh_lens->callback([&outcome, coh_args] { outcome = do_cohomology_lens(*coh_args); });

  CLI::App* coh_top = coh_app->add_subcommand(
      "validate-top", "check a cohomology table against the closed orientable profile");
  coh_top->fallthrough();
  coh_top->add_option("--lens-p", coh_args->p, "validate the lens-suspension table for this p");
  coh_top->add_option("--q", coh_args->q, "lens twisting when --lens-p is used")
      ->capture_default_str();
  coh_top->add_option("--ranks", coh_args->ranks, "five ranks r0,r1,r2,r3,r4");
  coh_top->add_option("--torsion", coh_args->torsion,
                      "torsion per degree as DEG:d1,d2 (repeatable)");
  coh_top->add_option("--n", coh_args->n, "Euler characteristic n of the profile")
      ->capture_default_str();
  coh_top->add_option("--pi1orb-order", coh_args->pi1orb_order,
                      "finite orbifold fundamental group order");
  coh_top->add_flag("--pi1orb-infinite", coh_args->pi1orb_infinite,
                    "treat the orbifold fundamental group as infinite");
  coh_top->callback([&outcome, coh_args] { outcome = do_cohomology_validate_top(*coh_args); });

  CLI::App* coh_dual = coh_app->add_subcommand(
      "duality", "rational duality and the integer duality defect of a table pair");
  coh_dual->fallthrough();
  coh_dual->add_option("--lens-p", coh_args->p, "use the lens-suspension pair for this p");
  coh_dual->add_option("--q", coh_args->q, "lens twisting when --lens-p is used")
      ->capture_default_str();
  coh_dual->add_option("--ranks", coh_args->ranks, "cohomology ranks r0,...,r4");
  coh_dual->add_option("--torsion", coh_args->torsion,
                       "cohomology torsion as DEG:d1,d2 (repeatable)");
  coh_dual->add_option("--homology-ranks", coh_args->homology_ranks, "homology ranks r0,...,r4");
  coh_dual->add_option("--homology-torsion", coh_args->homology_torsion,
                       "homology torsion as DEG:d1,d2 (repeatable)");
  coh_dual->callback([&outcome, coh_args] { outcome = do_cohomology_duality(*coh_args); });

  // verify ---------------------------------------------------------------
  CLI::App* verify_app = app.add_subcommand("verify", "randomized lemma verification");
  verify_app->require_subcommand(1);
  verify_app->fallthrough();
  auto angle_args = std::make_shared<AngleSumArgs>();

  CLI::App* angle_sum = verify_app->add_subcommand(
      "angle-sum", "perimeter bound for triples in a sphere quotient");
  angle_sum->fallthrough();
  angle_sum->add_option("--k", angle_args->k, "first circle speed")->required();
  angle_sum->add_option("--l", angle_args->l, "second circle speed")->required();
  angle_sum->add_option("--gamma-order", angle_args->gamma_order, "order of the finite factor")
      ->capture_default_str();
  angle_sum->add_option("--gamma-exp", angle_args->gamma_exp,
                        "generator exponents a,b of the finite factor")
      ->capture_default_str();
  angle_sum->add_option("--trials", angle_args->trials, "number of sampled triples")
      ->capture_default_str();
  angle_sum->add_option("--seed", angle_args->seed, "sampling seed")->capture_default_str();
  angle_sum->add_option("--tol", angle_args->tol, "distance tolerance")->capture_default_str();
  angle_sum->add_option("--threshold", angle_args->threshold,
                        "assert max perimeter <= threshold (default pi + 3 tol)");
  angle_sum->callback([&outcome, angle_args] { outcome = do_verify_angle_sum(*angle_args); });

  // hitchin ---------------------------------------------------------------
  CLI::App* hit_app =
      app.add_subcommand("hitchin", "matrix model of the rotation-invariant 4-sphere families");
  hit_app->require_subcommand(1);
  hit_app->fallthrough();
  auto fp_args = std::make_shared<HitchinArgs>();
  fp_args->samples = 100;
  fp_args->tol = 1e-12;
  auto range_args = std::make_shared<HitchinArgs>();
  range_args->samples = 10000;
  range_args->tol = 1e-3;
  range_args->seed = 1;
  auto orbit_args = std::make_shared<HitchinArgs>();
  orbit_args->samples = hitchin::kDefaultSliceOrbitSamples;
  orbit_args->tol = kMetricTol;
  orbit_args->h = 0.1;
  auto phi_args = std::make_shared<HitchinArgs>();
  phi_args->samples = 1000;
  phi_args->tol = kAlgebraicTol;

  CLI::App* hit_fixed = hit_app->add_subcommand(
      "fixed-points", "the two circle-fixed matrices, with a randomized fixedness check");
  hit_fixed->fallthrough();
  hit_fixed->add_option("--samples", fp_args->samples, "random angles to test")
      ->capture_default_str();
  hit_fixed->add_option("--tol", fp_args->tol, "max allowed entry deviation")
      ->capture_default_str();
  hit_fixed->add_option("--seed", fp_args->seed, "sampling seed")->capture_default_str();
  add_orbifold_tag_flags(hit_fixed, *fp_args);
  hit_fixed->callback([&outcome, fp_args] { outcome = do_hitchin_fixed_points(*fp_args); });

  CLI::App* hit_range = hit_app->add_subcommand(
      "slice-range", "height range of the singular orbit, analytic and sampled");
  hit_range->fallthrough();
  hit_range->add_option("--tol", range_args->tol, "allowed sampled endpoint gap")
      ->capture_default_str();
  hit_range->add_option("--samples", range_args->samples, "sampled rotations")
      ->capture_default_str();
  hit_range->add_option("--seed", range_args->seed, "sampling seed")->capture_default_str();
  add_orbifold_tag_flags(hit_range, *range_args);
  hit_range->callback([&outcome, range_args] { outcome = do_hitchin_slice_range(*range_args); });

  CLI::App* hit_orbit = hit_app->add_subcommand(
      "slice-orbit", "uniqueness of the circle orbit in a singular-orbit height slice");
  hit_orbit->fallthrough();
  // The short -h would shadow the height option below; keep help long-only here.
  hit_orbit->set_help_flag("--help", "Print this help message and exit");
  hit_orbit->add_option("--h", orbit_args->h, "slice height, strictly inside the singular range")
      ->required();
  hit_orbit->add_option("--samples", orbit_args->samples, "sampled slice points")
      ->capture_default_str();
  hit_orbit->add_option("--tol", orbit_args->tol, "max allowed orbit distance")
      ->capture_default_str();
  hit_orbit->add_option("--seed", orbit_args->seed, "sampling seed")->capture_default_str();
  add_orbifold_tag_flags(hit_orbit, *orbit_args);
  hit_orbit->callback([&outcome, orbit_args] { outcome = do_hitchin_slice_orbit(*orbit_args); });

  CLI::App* hit_phi = hit_app->add_subcommand(
      "verify-phi12", "randomized check of the (2,1) rotation pair in suspension coordinates");
  hit_phi->fallthrough();
  hit_phi->add_option("--samples", phi_args->samples, "sampled points and angles")
      ->capture_default_str();
  hit_phi->add_option("--tol", phi_args->tol, "max allowed coordinate deviation")
      ->capture_default_str();
  hit_phi->add_option("--seed", phi_args->seed, "sampling seed")->capture_default_str();
  add_orbifold_tag_flags(hit_phi, *phi_args);
  hit_phi->callback([&outcome, phi_args] { outcome = do_hitchin_verify_phi12(*phi_args); });

  // ----------------------------------------------------------------------
  std::vector<std::string> argv_strings;
  argv_strings.reserve(args.size() + 1);
  argv_strings.push_back("orb4kit");
  for (const auto& a : args) argv_strings.push_back(a);
  std::vector<const char*> argv;
  argv.reserve(argv_strings.size());
  for (const auto& s : argv_strings) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* leaf = &app;
    while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
    out << leaf->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (!outcome) {
    err << "error: no subcommand executed\n";
    return 2;
  }
  if (json_mode)
    out << outcome->report.dump(2) << "\n";
  else
    render_text(out, outcome->report, 0);
  if (outcome->passed && !*outcome->passed) return 1;
  return 0;
}

}  // namespace orb4::cli
