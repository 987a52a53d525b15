#include "orb4/hitchin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "orb4/circle_min.hpp"
#include "orb4/sampling.hpp"

namespace orb4::hitchin {

namespace {

constexpr double kStructTol = 1e-9;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double slice_lo() { return -2.0 / std::sqrt(6.0); }
double slice_hi() { return 1.0 / std::sqrt(6.0); }

}  // namespace

HitchinPoint make_point(double t, double b, double c, double d, double h) {
  const double radius2 = t * t + b * b + c * c + d * d;
  const double expected = (2.0 - 3.0 * h * h) / 4.0;
  if (std::abs(radius2 - expected) > kStructTol)
    throw std::invalid_argument(
        "make_point: t^2 + b^2 + c^2 + d^2 must equal (2 - 3 h^2) / 4 within 1e-9");
  if (std::abs(h) > 2.0 / std::sqrt(6.0) + kStructTol)
    throw std::invalid_argument("make_point: |h| must not exceed 2/sqrt(6)");
  return {t, b, c, d, h};
}

SymTraceless3 SymTraceless3::from_entries(double xx, double xy, double xz, double yy, double yz,
                                          double zz) {
  SymTraceless3 m;
  m.e_ = {xx, xy, xz, yy, yz, zz};
  if (std::abs(xx + yy + zz) > kStructTol)
    throw std::invalid_argument("SymTraceless3: trace must vanish within 1e-9");
  if (std::abs(m.frobenius_norm() - 1.0) > kStructTol)
    throw std::invalid_argument("SymTraceless3: Frobenius norm must be 1 within 1e-9");
  return m;
}

double SymTraceless3::operator()(int row, int col) const {
  if (row > col) std::swap(row, col);
  if (row == 0) return e_[static_cast<std::size_t>(col)];
  if (row == 1) return col == 1 ? e_[3] : e_[4];
  return e_[5];
}

double SymTraceless3::frobenius_norm() const { return std::sqrt(dot(*this)); }

double SymTraceless3::dot(const SymTraceless3& other) const {
  return e_[0] * other.e_[0] + e_[3] * other.e_[3] + e_[5] * other.e_[5] +
         2.0 * (e_[1] * other.e_[1] + e_[2] * other.e_[2] + e_[4] * other.e_[4]);
}

SymTraceless3 embed(const HitchinPoint& p) {
  make_point(p.t, p.b, p.c, p.d, p.h);  // revalidate; embed is a public entry point
  return SymTraceless3::from_entries(-p.h / 2.0 + p.t, p.b, p.c, -p.h / 2.0 - p.t, p.d, p.h);
}

HitchinPoint suspension_coords(const SymTraceless3& m) {
  // Inverse of embed. The sphere condition follows from tracelessness and
  // unit Frobenius norm, so make_point cannot fail beyond rounding.
  return make_point((m(0, 0) - m(1, 1)) / 2.0, m(0, 1), m(0, 2), m(1, 2), m(2, 2));
}

SymTraceless3 s1_act(double theta, const SymTraceless3& m) {
  const double co = std::cos(theta);
  const double si = std::sin(theta);
  double a[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = m(i, j);

  // P = R A, N = P R^T with R the rotation of the xy-plane.
  double p[3][3];
  for (int j = 0; j < 3; ++j) {
    p[0][j] = co * a[0][j] - si * a[1][j];
    p[1][j] = si * a[0][j] + co * a[1][j];
    p[2][j] = a[2][j];
  }
  double n[3][3];
  for (int i = 0; i < 3; ++i) {
    n[i][0] = co * p[i][0] - si * p[i][1];
    n[i][1] = si * p[i][0] + co * p[i][1];
    n[i][2] = p[i][2];
  }
  // Symmetrize away the last bits of rounding skew.
  return SymTraceless3::from_entries(n[0][0], 0.5 * (n[0][1] + n[1][0]),
                                     0.5 * (n[0][2] + n[2][0]), n[1][1],
                                     0.5 * (n[1][2] + n[2][1]), n[2][2]);
}

namespace {

std::array<double, 3> jacobi_eigenvalues(const SymTraceless3& m) {
  double a[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = m(i, j);

  static constexpr int kPairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off =
        a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    if (off < 1e-32) break;
    for (const auto& pq : kPairs) {
      const int p = pq[0], q = pq[1];
      if (std::abs(a[p][q]) < 1e-300) continue;
      const double tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
      const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;
      // A <- J^T A J for the (p,q) Givens rotation J.
      double r[3][3];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = (i == j) ? 1.0 : 0.0;
      r[p][p] = c;
      r[q][q] = c;
      r[p][q] = s;
      r[q][p] = -s;
      double tmp[3][3];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          tmp[i][j] = r[0][i] * a[0][j] + r[1][i] * a[1][j] + r[2][i] * a[2][j];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          a[i][j] = tmp[i][0] * r[0][j] + tmp[i][1] * r[1][j] + tmp[i][2] * r[2][j];
    }
  }
  std::array<double, 3> eig{a[0][0], a[1][1], a[2][2]};
  std::sort(eig.begin(), eig.end());
  return eig;
}

double det3(const SymTraceless3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(1, 2)) -
         m(0, 1) * (m(0, 1) * m(2, 2) - m(1, 2) * m(0, 2)) +
         m(0, 2) * (m(0, 1) * m(1, 2) - m(1, 1) * m(0, 2));
}

}  // namespace

std::array<double, 3> eigenvalue_type(const SymTraceless3& m) {
  const double off = m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2);
  if (off < 1e-30) {
    std::array<double, 3> eig{m(0, 0), m(1, 1), m(2, 2)};
    std::sort(eig.begin(), eig.end());
    return eig;
  }

  // Trigonometric solution of the characteristic cubic of a traceless
  // symmetric matrix: eigenvalues are 2p cos(phi + 2 pi k / 3) with
  // p = |M|_F / sqrt(6) and cos(3 phi) = det(M) / (2 p^3). Near a repeated
  // eigenvalue |cos(3 phi)| -> 1 and the acos derivative blows up, costing
  // half the significant digits; switch to Jacobi sweeps there.
  const double p2 = m(0, 0) * m(0, 0) + m(1, 1) * m(1, 1) + m(2, 2) * m(2, 2) + 2.0 * off;
  const double p = std::sqrt(p2 / 6.0);
  const double r = std::clamp(det3(m) / (2.0 * p * p * p), -1.0, 1.0);
  if (1.0 - std::abs(r) < 1e-6) return jacobi_eigenvalues(m);

  const double phi = std::acos(r) / 3.0;
  const double hi = 2.0 * p * std::cos(phi);
  const double lo = 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  return {lo, -lo - hi, hi};
}

std::pair<SymTraceless3, SymTraceless3> fixed_points() {
  const double a = 1.0 / std::sqrt(6.0);
  return {SymTraceless3::from_entries(a, 0, 0, a, 0, -2.0 * a),
          SymTraceless3::from_entries(-a, 0, 0, -a, 0, 2.0 * a)};
}

Phi12Report verify_phi12(std::int64_t samples, double tol, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("verify_phi12: samples must be >= 1");
  if (tol <= 0.0) throw std::invalid_argument("verify_phi12: tol must be positive");

  Phi12Report report;
  report.samples = samples;
  report.tol = tol;
  report.seed = seed;

  for (std::int64_t i = 0; i < samples; ++i) {
    TrialRng rng(seed, static_cast<std::uint64_t>(i));
    const double theta = rng.uniform() * kTwoPi;
    // Keep h off the poles so all four transverse coordinates stay active.
    const double h = (2.0 * rng.uniform() - 1.0) * 0.99 * (2.0 / std::sqrt(6.0));
    const double radius = std::sqrt((2.0 - 3.0 * h * h) / 4.0);
    const auto dir = rng.unit_vec4();
    const HitchinPoint pt =
        make_point(radius * dir[0], radius * dir[1], radius * dir[2], radius * dir[3], h);

    const HitchinPoint moved = suspension_coords(s1_act(theta, embed(pt)));
    const double c2 = std::cos(2.0 * theta), s2 = std::sin(2.0 * theta);
    const double c1 = std::cos(theta), s1 = std::sin(theta);
    const double dev = std::max({std::abs(moved.t - (pt.t * c2 - pt.b * s2)),
                                 std::abs(moved.b - (pt.t * s2 + pt.b * c2)),
                                 std::abs(moved.c - (pt.c * c1 - pt.d * s1)),
                                 std::abs(moved.d - (pt.c * s1 + pt.d * c1)),
                                 std::abs(moved.h - pt.h)});
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  report.passed = report.max_deviation <= tol;
  return report;
}

SliceRangeReport singular_slice_range(double tol, std::int64_t samples, std::uint64_t seed) {
  if (tol <= 0.0) throw std::invalid_argument("singular_slice_range: tol must be positive");
  if (samples < 1) throw std::invalid_argument("singular_slice_range: samples must be >= 1");

  SliceRangeReport report;
  report.samples = samples;
  report.tol = tol;
  report.seed = seed;

  // The (3,3) entry of R M R^T is the quadratic form of M at the third row
  // of R, so its range over the rotation orbit is [lambda_min, lambda_max].
  const SymTraceless3 m = fixed_points().first;
  const auto eig = eigenvalue_type(m);
  report.analytic_lo = eig[0];
  report.analytic_hi = eig[2];

  report.sampled_lo = std::numeric_limits<double>::infinity();
  report.sampled_hi = -std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < samples; ++i) {
    TrialRng rng(seed, static_cast<std::uint64_t>(i));
    const auto rot = rng.rotation3();
    const auto& u = rot[2];
    double val = 0.0;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) val += u[static_cast<std::size_t>(r)] * m(r, c) * u[static_cast<std::size_t>(c)];
    report.sampled_lo = std::min(report.sampled_lo, val);
    report.sampled_hi = std::max(report.sampled_hi, val);
  }

  const bool contained = report.sampled_lo >= report.analytic_lo - 1e-12 &&
                         report.sampled_hi <= report.analytic_hi + 1e-12;
  const bool endpoints_reached = (report.sampled_lo - report.analytic_lo) <= tol &&
                                 (report.analytic_hi - report.sampled_hi) <= tol;
  report.passed = contained && endpoints_reached;
  return report;
}

namespace {

// Points of the singular orbit are a (I - 3 w w^T) for unit w and
// a = 1/sqrt(6): w spans the -2a eigenline, and w, -w give the same matrix.
// The (3,3) entry is a (1 - 3 w3^2), so the slice at height h is cut out by
// w3^2 = (1 - sqrt(6) h) / 3, leaving the horizontal circle (w1, w2) free.
SymTraceless3 rank_one_slice_point(double w1, double w2, double w3) {
  const double a = 1.0 / std::sqrt(6.0);
  return SymTraceless3::from_entries(a * (1.0 - 3.0 * w1 * w1), -3.0 * a * w1 * w2,
                                     -3.0 * a * w1 * w3, a * (1.0 - 3.0 * w2 * w2),
                                     -3.0 * a * w2 * w3, a * (1.0 - 3.0 * w3 * w3));
}

// Fourier coefficients of theta -> x.dot(s1_act(theta, ref)), a trigonometric
// polynomial of degree 2 (the action rotates (t,b) at speed 2), recovered
// exactly from 8 equispaced samples.
CosineSeries correlation_series(const SymTraceless3& x, const SymTraceless3& ref) {
  constexpr int kN = 8;
  std::array<double, kN> tau{};
  for (int n = 0; n < kN; ++n)
    tau[static_cast<std::size_t>(n)] = x.dot(s1_act(kTwoPi * n / kN, ref));

  CosineSeries f;
  double a0 = 0.0;
  for (double v : tau) a0 += v;
  f.add(a0 / kN, 0.0, 0.0);
  for (int k = 1; k <= 2; ++k) {
    double ak = 0.0, bk = 0.0;
    for (int n = 0; n < kN; ++n) {
      const double ang = kTwoPi * k * n / kN;
      ak += tau[static_cast<std::size_t>(n)] * std::cos(ang);
      bk += tau[static_cast<std::size_t>(n)] * std::sin(ang);
    }
    ak *= 2.0 / kN;
    bk *= 2.0 / kN;
    f.add(std::hypot(ak, bk), static_cast<double>(k), -std::atan2(bk, ak));
  }
  return f;
}

}  // namespace

SliceOrbitReport slice_orbit_uniqueness(double h, std::int64_t samples, double tol,
                                        std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("slice_orbit_uniqueness: samples must be >= 1");
  if (tol <= 0.0) throw std::invalid_argument("slice_orbit_uniqueness: tol must be positive");
  if (!(h > slice_lo()) || !(h < slice_hi()))
    throw std::domain_error(
        "slice_orbit_uniqueness: h must lie strictly inside (-2/sqrt(6), 1/sqrt(6))");

  SliceOrbitReport report;
  report.h = h;
  report.samples = samples;
  report.tol = tol;
  report.seed = seed;

  const double w3 = std::sqrt((1.0 - std::sqrt(6.0) * h) / 3.0);
  const double s = std::sqrt(1.0 - w3 * w3);
  const SymTraceless3 ref = rank_one_slice_point(s, 0.0, w3);

  for (std::int64_t i = 0; i < samples; ++i) {
    TrialRng rng(seed, static_cast<std::uint64_t>(i));
    const double phi = rng.uniform() * kTwoPi;
    // Both signs of w3 must land in the same circle orbit, because w and -w
    // give the same matrix; exercise both.
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    const SymTraceless3 sample =
        rank_one_slice_point(s * std::cos(phi), s * std::sin(phi), sign * w3);

    // Min Frobenius distance over the circle, via the correlation's certified
    // maximum: dist^2 = 2 - 2 tau. The moving point has Frobenius speed at
    // most 2, so the correlation angle is 2-Lipschitz.
    const CircleMinResult g = min_angle_on_circle(correlation_series(sample, ref), tol / 2.0, 2.0);
    const double dist = 2.0 * std::sin(g.value / 2.0);
    report.max_orbit_distance = std::max(report.max_orbit_distance, dist);
  }
  report.passed = report.max_orbit_distance <= tol;
  return report;
}

}  // namespace orb4::hitchin
