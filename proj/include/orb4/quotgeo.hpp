#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace orb4::quotgeo {

/// Quotient of the unit sphere of C^2 by the circle acting with speeds (k, l)
/// and a further finite cyclic group of order gamma_order whose generator
/// multiplies the coordinates by exp(2 pi i a / n) and exp(2 pi i b / n).
/// k and l are nonzero with gcd(|k|, |l|) = 1; gamma_order >= 1.
struct QuotientModel {
  std::int64_t k = 1, l = 1;
  std::int64_t gamma_order = 1;
  std::int64_t gamma_a = 0, gamma_b = 0;

  bool operator==(const QuotientModel&) const = default;
};

/// Validates the parameters and returns the model; throws on a zero speed,
/// non-coprime speeds, or gamma_order < 1.
QuotientModel make_model(std::int64_t k, std::int64_t l, std::int64_t gamma_order,
                         std::int64_t gamma_a, std::int64_t gamma_b);

/// A point of the unit sphere of C^2, representing its orbit.
struct OrbitPoint {
  std::complex<double> z1, z2;
};

/// Angle in [0, pi] between two unit vectors of C^2, acos of the real part of
/// the Hermitian inner product. Inputs must be unit vectors within 1e-9.
double ambient_angle(const OrbitPoint& x, const OrbitPoint& y);

/// Distance between the orbits of x and y in the quotient: the minimum of the
/// ambient angle over the circle and all gamma_order finite rotations,
/// certified to within tol. The evaluation budget of the underlying search is
/// shared across the finite group elements.
double orbit_distance(const QuotientModel& model, const OrbitPoint& x, const OrbitPoint& y,
                      double tol);

/// Outcome of a randomized perimeter sweep: sample triples of orbits, compute
/// the three pairwise distances, and compare the largest perimeter against the
/// threshold (pi plus three distance tolerances by default, since each side
/// can only overshoot by tol).
struct PerimeterReport {
  double max_perimeter = 0.0;
  std::array<OrbitPoint, 3> witness{};  // the triple realizing max_perimeter
  std::int64_t witness_trial = -1;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

/// Runs the sweep with deterministic per-trial sampling (three uniform points
/// of the unit sphere of C^2 per trial). A nonpositive threshold argument
/// selects the default pi + 3 tol.
PerimeterReport verify_perimeter_bound(const QuotientModel& model, std::int64_t trials,
                                       std::uint64_t seed, double tol, double threshold = 0.0);

/// Angle at the corner of a spherical comparison triangle with side a
/// opposite and sides b, c adjacent: acos((cos a - cos b cos c)/(sin b sin c)),
/// clamped. Requires a, b, c in (0, pi) with b, c at least 1e-9 from the
/// endpoints, and the triangle inequality up to a 1e-12 slack.
double comparison_angle(double a, double b, double c);

}  // namespace orb4::quotgeo
