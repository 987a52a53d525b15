#include "orb4/wps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "orb4/circle_min.hpp"
#include "orb4/quotgeo.hpp"

namespace orb4::wps {

namespace {

void check_unit(const std::array<std::complex<double>, 3>& p, const char* name) {
  double n2 = 0.0;
  for (const auto& z : p) n2 += std::norm(z);
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-9)
    throw std::invalid_argument(std::string("wps_distance: ") + name +
                                " must be a unit vector of C^3 (within 1e-9)");
}

// Determinant test for the pointwise fixed sphere {w_i = 0}: with {i, j, k}
// the three indices, the sphere is fixed iff m_j l_k - m_k l_j = 0.
std::array<std::int64_t, 3> sphere_determinants(const WeightTriple& w,
                                                const CircleWeightVector& m) {
  return {m[1] * w[2] - m[2] * w[1], m[0] * w[2] - m[2] * w[0], m[0] * w[1] - m[1] * w[0]};
}

void require_nontrivial(const WeightTriple& w, const CircleWeightVector& m) {
  // m is trivial modulo the weight circle iff m = t * l for an integer t.
  if (m[0] % w[0] == 0) {
    const std::int64_t t = m[0] / w[0];
    if (m[1] == t * w[1] && m[2] == t * w[2])
      throw std::invalid_argument(
          "subaction is trivial: m is an integer multiple of the weight vector");
  }
}

}  // namespace

std::int64_t WeightTriple::max() const { return std::max({l0, l1, l2}); }

WeightTriple make_weights(std::int64_t l0, std::int64_t l1, std::int64_t l2) {
  if (l0 < 1 || l1 < 1 || l2 < 1)
    throw std::invalid_argument("make_weights: weights must be positive integers");
  if (std::gcd(std::gcd(l0, l1), l2) != 1)
    throw std::invalid_argument(
        "make_weights: weights share a common factor; use normalize_weights to divide it out");
  return {l0, l1, l2};
}

WeightTriple normalize_weights(std::int64_t l0, std::int64_t l1, std::int64_t l2) {
  if (l0 < 1 || l1 < 1 || l2 < 1)
    throw std::invalid_argument("normalize_weights: weights must be positive integers");
  const std::int64_t g = std::gcd(std::gcd(l0, l1), l2);
  return make_weights(l0 / g, l1 / g, l2 / g);
}

std::vector<Stratum> stratification(const WeightTriple& w) {
  std::vector<Stratum> out;
  for (int i = 0; i < 3; ++i)
    if (w[i] > 1) out.push_back({Stratum::Kind::Vertex, i, -1, w[i]});
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const std::int64_t g = std::gcd(w[i], w[j]);
      if (g > 1) out.push_back({Stratum::Kind::Edge, i, j, g});
    }
  out.push_back({Stratum::Kind::Regular, -1, -1, 1});
  return out;
}

std::optional<ProductForm> is_product_form(const WeightTriple& w) {
  // Try every assignment of the weights to (ab, ac, bc). Within one
  // assignment, a must divide both of the first two entries; b and c are then
  // determined and only the third entry needs checking.
  static constexpr std::array<std::array<int, 3>, 6> kPerms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& p : kPerms) {
    const std::int64_t ab = w[p[0]], ac = w[p[1]], bc = w[p[2]];
    const std::int64_t g = std::gcd(ab, ac);
    for (std::int64_t a = 1; a <= g; ++a) {
      if (g % a != 0) continue;
      const std::int64_t b = ab / a;
      const std::int64_t c = ac / a;
      if (b * c == bc) return ProductForm{a, b, c};
    }
  }
  return std::nullopt;
}

algebra::GradedGroup wps_cohomology(const WeightTriple&) {
  algebra::GradedGroup g(4);
  g.set(0, algebra::FgAbelianGroup::free_abelian(1));
  g.set(2, algebra::FgAbelianGroup::free_abelian(1));
  g.set(4, algebra::FgAbelianGroup::free_abelian(1));
  return g;
}

FixedPointData fixed_point_set(const WeightTriple& w, const CircleWeightVector& m) {
  require_nontrivial(w, m);
  const auto d = sphere_determinants(w, m);
  int fixed_sphere = -1;
  for (int i = 0; i < 3; ++i) {
    if (d[i] != 0) continue;
    // Two vanishing determinants would force m proportional to the weights,
    // excluded above.
    if (fixed_sphere != -1)
      throw std::logic_error("fixed_point_set: two spheres fixed by a nontrivial subaction");
    fixed_sphere = i;
  }
  if (fixed_sphere == -1) return {FixedPointData::Kind::ThreeVertices, -1};
  return {FixedPointData::Kind::VertexAndSphere, fixed_sphere};
}

IsotropyRep isotropy_weights(const WeightTriple& w, const CircleWeightVector& m, int vertex) {
  if (vertex < 0 || vertex > 2)
    throw std::invalid_argument("isotropy_weights: vertex index must be 0, 1 or 2");
  require_nontrivial(w, m);

  const int j = vertex == 0 ? 1 : 0;
  const int k = vertex == 2 ? 1 : 2;
  const std::int64_t raw_j = m[j] * w[vertex] - m[vertex] * w[j];
  const std::int64_t raw_k = m[k] * w[vertex] - m[vertex] * w[k];
  if (raw_j == 0 || raw_k == 0) {
    const int other = raw_j == 0 ? k : j;
    throw std::domain_error("isotropy_weights: vertex " + std::to_string(vertex) +
                            " is not isolated; the coordinate sphere {w_" + std::to_string(other) +
                            " = 0} through it is pointwise fixed");
  }

  const std::int64_t g = std::gcd(raw_j, raw_k);
  std::int64_t a = std::abs(raw_j) / g;
  std::int64_t b = std::abs(raw_k) / g;
  if (a > b) std::swap(a, b);
  return {a, b};
}

bool kobayashi_check(const WeightTriple& w, const CircleWeightVector& m) {
  const FixedPointData f = fixed_point_set(w, m);
  // Three points, or one point plus one sphere.
  const std::int64_t chi_fixed = f.kind == FixedPointData::Kind::ThreeVertices ? 3 : 1 + 2;
  return chi_fixed == algebra::euler_characteristic(wps_cohomology(w));
}

double wps_distance(const WeightTriple& w, const std::array<std::complex<double>, 3>& p,
                    const std::array<std::complex<double>, 3>& q, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("wps_distance: tol must be positive");
  check_unit(p, "p");
  check_unit(q, "q");

  // Angle between p and the rotated q is acos of
  // f(theta) = Re sum_j p_j conj(q_j) exp(-i l_j theta).
  CosineSeries f;
  for (int j = 0; j < 3; ++j) {
    const std::complex<double> c = p[static_cast<std::size_t>(j)] *
                                   std::conj(q[static_cast<std::size_t>(j)]);
    f.add(std::abs(c), static_cast<double>(w[j]), -std::arg(c));
  }
  // The moving point travels at speed at most max(l); the angle to a fixed
  // point is 1-Lipschitz in the moving point.
  return min_angle_on_circle(f, tol, static_cast<double>(w.max())).value;
}

ToponogovWitness toponogov_witness(const WeightTriple& w, const CircleWeightVector& m,
                                   double tol) {
  if (tol <= 0.0) throw std::invalid_argument("toponogov_witness: tol must be positive");
  const FixedPointData f = fixed_point_set(w, m);
  if (f.kind != FixedPointData::Kind::ThreeVertices)
    throw std::domain_error(
        "toponogov_witness: the subaction must fix exactly the three coordinate vertices");

  const std::array<std::array<std::complex<double>, 3>, 3> e = {{
      {std::complex<double>(1, 0), 0, 0},
      {0, std::complex<double>(1, 0), 0},
      {0, 0, std::complex<double>(1, 0)},
  }};
  ToponogovWitness out;
  out.sides = {wps_distance(w, e[0], e[1], tol), wps_distance(w, e[0], e[2], tol),
               wps_distance(w, e[1], e[2], tol)};
  for (double s : out.sides) {
    if (s < tol) throw std::domain_error("toponogov_witness: degenerate side shorter than tol");
    if (s > std::numbers::pi - 1e-9)
      throw std::domain_error("toponogov_witness: side too close to pi for comparison angles");
  }
  // Per vertex: index of the opposite side, then the two adjacent sides,
  // into the (01, 02, 12) layout.
  static constexpr std::array<std::array<int, 3>, 3> kSideIdx = {{{2, 0, 1}, {1, 0, 2}, {0, 1, 2}}};
  for (int i = 0; i < 3; ++i) {
    const double opp = out.sides[static_cast<std::size_t>(kSideIdx[i][0])];
    const double b = out.sides[static_cast<std::size_t>(kSideIdx[i][1])];
    const double c = out.sides[static_cast<std::size_t>(kSideIdx[i][2])];
    if (opp > b + c + tol)
      throw std::domain_error("toponogov_witness: triangle inequality violated beyond tol");
    // Clamp rounding noise so the comparison angle is well defined.
    out.angles[static_cast<std::size_t>(i)] =
        quotgeo::comparison_angle(std::min(opp, b + c), b, c);
  }
  out.angle_sum = out.angles[0] + out.angles[1] + out.angles[2];
  return out;
}

}  // namespace orb4::wps
