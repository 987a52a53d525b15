#include "orb4/sampling.hpp"

#include <cmath>
#include <numbers>

namespace orb4 {

namespace {

// splitmix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial)
    : state_(mix64(mix64(seed) ^ (0x9E3779B97F4A7C15ull * (trial + 1)))) {}

std::uint64_t TrialRng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double TrialRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double TrialRng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  // u1 strictly positive so the log is finite.
  double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double phi = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(phi);
  has_cached_ = true;
  return r * std::cos(phi);
}

std::array<double, 4> TrialRng::unit_vec4() {
  while (true) {
    std::array<double, 4> v{normal(), normal(), normal(), normal()};
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    if (n < 1e-12) continue;
    for (double& x : v) x /= n;
    return v;
  }
}

std::array<std::complex<double>, 2> TrialRng::unit_c2() {
  auto v = unit_vec4();
  return {std::complex<double>(v[0], v[1]), std::complex<double>(v[2], v[3])};
}

std::array<std::complex<double>, 3> TrialRng::unit_c3() {
  while (true) {
    std::array<double, 6> v;
    double n2 = 0.0;
    for (double& x : v) {
      x = normal();
      n2 += x * x;
    }
    double n = std::sqrt(n2);
    if (n < 1e-12) continue;
    return {std::complex<double>(v[0] / n, v[1] / n), std::complex<double>(v[2] / n, v[3] / n),
            std::complex<double>(v[4] / n, v[5] / n)};
  }
}

std::array<std::array<double, 3>, 3> TrialRng::rotation3() {
  auto q = unit_vec4();
  double w = q[0], x = q[1], y = q[2], z = q[3];
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
           {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
           {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

}  // namespace orb4
