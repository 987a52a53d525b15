#include "orb4/quotgeo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "orb4/circle_min.hpp"
#include "orb4/sampling.hpp"

namespace orb4::quotgeo {

namespace {

constexpr double kUnitTol = 1e-9;

double clamped_acos(double x) {
  if (x >= 1.0) return 0.0;
  if (x <= -1.0) return std::numbers::pi;
  return std::acos(x);
}

void check_unit(const OrbitPoint& x, const char* name) {
  const double n = std::sqrt(std::norm(x.z1) + std::norm(x.z2));
  if (std::abs(n - 1.0) > kUnitTol)
    throw std::invalid_argument(std::string("quotgeo: ") + name +
                                " must be a unit vector of C^2 (within 1e-9)");
}

}  // namespace

QuotientModel make_model(std::int64_t k, std::int64_t l, std::int64_t gamma_order,
                         std::int64_t gamma_a, std::int64_t gamma_b) {
  if (k == 0 || l == 0) throw std::invalid_argument("make_model: speeds must be nonzero");
  if (std::gcd(k, l) != 1)
    throw std::invalid_argument("make_model: speeds must be coprime in absolute value");
  if (gamma_order < 1) throw std::invalid_argument("make_model: gamma_order must be >= 1");
  return {k, l, gamma_order, gamma_a, gamma_b};
}

double ambient_angle(const OrbitPoint& x, const OrbitPoint& y) {
  check_unit(x, "x");
  check_unit(y, "y");
  const std::complex<double> inner = x.z1 * std::conj(y.z1) + x.z2 * std::conj(y.z2);
  return clamped_acos(inner.real());
}

double orbit_distance(const QuotientModel& model, const OrbitPoint& x, const OrbitPoint& y,
                      double tol) {
  if (tol <= 0.0) throw std::invalid_argument("orbit_distance: tol must be positive");
  check_unit(x, "x");
  check_unit(y, "y");

  const std::complex<double> c1 = x.z1 * std::conj(y.z1);
  const std::complex<double> c2 = x.z2 * std::conj(y.z2);
  const double lip =
      static_cast<double>(std::max(std::abs(model.k), std::abs(model.l)));
  const double tau = 2.0 * std::numbers::pi / static_cast<double>(model.gamma_order);

  // One certified circle search per finite group element; the angle to
  // gamma^j . exp(i theta) . y is acos of
  //   Re( c1 exp(-i (k theta + a j tau)) + c2 exp(-i (l theta + b j tau)) ).
  std::size_t budget = 1000000;
  double best = std::numbers::pi;
  for (std::int64_t j = 0; j < model.gamma_order; ++j) {
    CosineSeries f;
    f.add(std::abs(c1), static_cast<double>(model.k),
          static_cast<double>(model.gamma_a * j) * tau - std::arg(c1));
    f.add(std::abs(c2), static_cast<double>(model.l),
          static_cast<double>(model.gamma_b * j) * tau - std::arg(c2));
    // Later group elements prune against the best value found so far.
    const CircleMinResult r = min_angle_on_circle(f, tol, lip, budget, best);
    budget -= std::min(budget, r.evals);
    best = std::min(best, r.value);
  }
  return best;
}

PerimeterReport verify_perimeter_bound(const QuotientModel& model, std::int64_t trials,
                                       std::uint64_t seed, double tol, double threshold) {
  if (trials < 1) throw std::invalid_argument("verify_perimeter_bound: trials must be >= 1");
  if (tol <= 0.0) throw std::invalid_argument("verify_perimeter_bound: tol must be positive");

  PerimeterReport report;
  report.trials = trials;
  report.seed = seed;
  report.tol = tol;
  report.threshold = threshold > 0.0 ? threshold : std::numbers::pi + 3.0 * tol;

  for (std::int64_t i = 0; i < trials; ++i) {
    TrialRng rng(seed, static_cast<std::uint64_t>(i));
    std::array<OrbitPoint, 3> pts;
    for (OrbitPoint& p : pts) {
      const auto z = rng.unit_c2();
      p = {z[0], z[1]};
    }
    const double perimeter = orbit_distance(model, pts[0], pts[1], tol) +
                             orbit_distance(model, pts[1], pts[2], tol) +
                             orbit_distance(model, pts[0], pts[2], tol);
    if (perimeter > report.max_perimeter) {
      report.max_perimeter = perimeter;
      report.witness = pts;
      report.witness_trial = i;
    }
  }
  report.passed = report.max_perimeter <= report.threshold;
  return report;
}

double comparison_angle(double a, double b, double c) {
  constexpr double kEdgeGuard = 1e-9;
  constexpr double kTriangleSlack = 1e-12;
  if (!(a > 0.0) || !(a < std::numbers::pi))
    throw std::domain_error("comparison_angle: opposite side must lie in (0, pi)");
  for (double s : {b, c})
    if (!(s >= kEdgeGuard) || !(s <= std::numbers::pi - kEdgeGuard))
      throw std::domain_error(
          "comparison_angle: adjacent sides must lie in (0, pi), at least 1e-9 from the ends");
  if (a > b + c + kTriangleSlack || b > a + c + kTriangleSlack || c > a + b + kTriangleSlack)
    throw std::domain_error("comparison_angle: sides violate the triangle inequality");
  const double num = std::cos(a) - std::cos(b) * std::cos(c);
  const double den = std::sin(b) * std::sin(c);
  return clamped_acos(num / den);
}

}  // namespace orb4::quotgeo
