#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace orb4 {

/// Deterministic random source for one trial of a seeded experiment. Trial i
/// of run (seed) draws from a splitmix64 stream keyed by (seed, i), so every
/// trial is reproducible on its own and results do not depend on evaluation
/// order. Gaussian variates use an explicit Box-Muller transform on 53-bit
/// uniforms; std::normal_distribution is implementation-defined and would make
/// recorded fixtures compiler-specific.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform();
  /// Standard normal variate.
  double normal();

  /// Uniform point on the unit sphere S^3 in R^4.
  std::array<double, 4> unit_vec4();
  /// Uniform point on the unit sphere of C^2 (same as unit_vec4, repackaged).
  std::array<std::complex<double>, 2> unit_c2();
  /// Uniform point on the unit sphere of C^3.
  std::array<std::complex<double>, 3> unit_c3();
  /// Haar-uniform rotation, via a uniform unit quaternion.
  std::array<std::array<double, 3>, 3> rotation3();

 private:
  std::uint64_t next_u64();

  std::uint64_t state_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace orb4
