#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "orb4/algebra.hpp"

namespace orb4::wps {

/// Weights (l0, l1, l2) of a weighted projective plane, the quotient of the
/// unit sphere of C^3 by the circle acting with these speeds on the three
/// coordinates. Positive, overall coprime. Construct via make_weights or
/// normalize_weights.
struct WeightTriple {
  std::int64_t l0 = 1, l1 = 1, l2 = 1;

  std::int64_t operator[](int i) const { return i == 0 ? l0 : (i == 1 ? l1 : l2); }
  std::int64_t max() const;
  bool operator==(const WeightTriple&) const = default;
};

/// Validates positivity and gcd(l0, l1, l2) = 1; throws otherwise.
WeightTriple make_weights(std::int64_t l0, std::int64_t l1, std::int64_t l2);

/// Divides out the overall gcd, then validates. The quotient space only
/// depends on the reduced triple.
WeightTriple normalize_weights(std::int64_t l0, std::int64_t l1, std::int64_t l2);

/// Speeds (m0, m1, m2) of a circle subaction of the ambient torus, read
/// modulo the weight circle itself.
struct CircleWeightVector {
  std::int64_t m0 = 0, m1 = 0, m2 = 0;

  std::int64_t operator[](int i) const { return i == 0 ? m0 : (i == 1 ? m1 : m2); }
  bool operator==(const CircleWeightVector&) const = default;
};

/// One stratum of the quotient: an isolated vertex [e_i] with cyclic isotropy
/// of order l_i, an edge sphere {w_k = 0} with isotropy of order gcd(l_i, l_j),
/// or the regular part. Only strata with nontrivial isotropy are listed as
/// vertices/edges; an order-1 vertex or edge is part of the regular stratum.
struct Stratum {
  enum class Kind { Vertex, Edge, Regular };
  Kind kind = Kind::Regular;
  int i = -1;                    // vertex index, or first edge endpoint
  int j = -1;                    // second edge endpoint (edges only)
  std::int64_t group_order = 1;  // order of the local cyclic isotropy group
};

/// Singular stratification in deterministic order: vertices by index, then
/// edges (i < j) lexicographically, then the regular stratum.
std::vector<Stratum> stratification(const WeightTriple& w);

struct ProductForm {
  std::int64_t a = 1, b = 1, c = 1;
};

/// Decides whether the weights are (ab, ac, bc) up to permutation, which is
/// exactly when the underlying space is the smooth projective plane. Returns
/// a witness factorization, or nullopt when there is none.
std::optional<ProductForm> is_product_form(const WeightTriple& w);

/// Integral cohomology of the quotient: (Z, 0, Z, 0, Z) for every weight
/// triple, concentrated in even degrees.
algebra::GradedGroup wps_cohomology(const WeightTriple& w);

/// Fixed point set of the subaction with speed vector m: either the three
/// coordinate vertices, or one isolated vertex together with the opposite
/// coordinate sphere {w_isolated_vertex = 0}, fixed pointwise.
struct FixedPointData {
  enum class Kind { ThreeVertices, VertexAndSphere };
  Kind kind = Kind::ThreeVertices;
  int isolated_vertex = -1;  // set only for VertexAndSphere

  bool operator==(const FixedPointData&) const = default;
};

/// Classifies the fixed set of the m-subaction on the quotient by the weight
/// circle. The sphere {w_i = 0} is pointwise fixed iff m_j l_k - m_k l_j = 0;
/// at most one such sphere can occur for a nontrivial subaction. Throws if m
/// is an integer multiple of the weights (trivial subaction).
FixedPointData fixed_point_set(const WeightTriple& w, const CircleWeightVector& m);

/// Weights (k, l) of the local circle representation at an isolated fixed
/// vertex, normalized: coprime, positive, k <= l.
struct IsotropyRep {
  std::int64_t k = 1, l = 1;
  bool operator==(const IsotropyRep&) const = default;
};

/// Local isotropy representation of the m-subaction at vertex i. The raw
/// weights on the two transverse coordinate lines are m_j l_i - m_i l_j for
/// the other two indices j; they are divided by their gcd and normalized to
/// positive sorted form. Throws if the vertex is not an isolated fixed point,
/// i.e. some raw weight vanishes and a coordinate sphere through the vertex
/// is pointwise fixed.
IsotropyRep isotropy_weights(const WeightTriple& w, const CircleWeightVector& m, int vertex);

/// Euler characteristic bookkeeping for the m-subaction: chi of the fixed
/// point set (3 for three vertices, 1 + 2 for vertex plus sphere) must equal
/// chi of the quotient space, which is 3.
bool kobayashi_check(const WeightTriple& w, const CircleWeightVector& m);

/// Distance in the quotient between the orbits of two unit vectors of C^3:
/// the minimum over the weight circle of the ambient angle. Certified to
/// within tol by a global subdivision search. Inputs must be unit vectors
/// within 1e-9.
double wps_distance(const WeightTriple& w, const std::array<std::complex<double>, 3>& p,
                    const std::array<std::complex<double>, 3>& q, double tol);

/// Comparison triangle data for the three coordinate vertices: pairwise
/// quotient distances (01, 02, 12), the spherical comparison angles at the
/// vertices, and their sum. The lower curvature bound forces the sum to be
/// at least pi; values are reported so callers can assert sum > pi - tol.
struct ToponogovWitness {
  std::array<double, 3> sides{};   // d(v0,v1), d(v0,v2), d(v1,v2)
  std::array<double, 3> angles{};  // comparison angles at v0, v1, v2
  double angle_sum = 0.0;
};

/// Builds the witness for the m-subaction's vertex triangle. Requires the
/// fixed point set to be three isolated vertices, and errors on degenerate
/// sides or a triangle inequality violated beyond tol.
ToponogovWitness toponogov_witness(const WeightTriple& w, const CircleWeightVector& m, double tol);

}  // namespace orb4::wps
