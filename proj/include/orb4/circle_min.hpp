#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

namespace orb4 {

/// Real trigonometric series f(theta) = sum_i amp_i * cos(freq_i * theta + phase_i).
/// Amplitudes are normalized to be nonnegative (a negative amplitude shifts the
/// phase by pi); zero-amplitude terms are dropped and terms with exactly equal
/// frequencies are merged by phasor addition.
class CosineSeries {
 public:
  struct Term {
    double amp, freq, phase;
  };

  void add(double amp, double freq, double phase);
  double eval(double theta) const;
  /// sum |amp_i * freq_i|, a Lipschitz constant for f.
  double slope_bound() const;
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

struct CircleMinResult {
  double theta = 0.0;        // location of the incumbent minimum
  double value = 0.0;        // g(theta) at the incumbent; >= the true minimum
  double lower_bound = 0.0;  // certified: the true minimum over the circle is >= this
  std::size_t evals = 0;     // objective evaluations spent
};

/// Certified global minimum of g(theta) = acos(clamp(f(theta), -1, 1)) over one
/// full period, for 1-periodic-in-theta trigonometric f with |f| <= 1 up to
/// rounding. angle_lipschitz must bound |dg/dtheta|; for quotient metrics this
/// is the largest rotation speed of the moving point.
///
/// Branch and bound on subintervals: each interval carries the larger of two
/// certified lower bounds, one from the Lipschitz constant of g (tight when the
/// angle is small and acos steepens) and one from the exact per-term maximum of
/// f over the interval pushed through acos (tight when f is near an extremum
/// and g's own bound is useless). Splitting stops once the best interval bound
/// is within tol of the incumbent, so the returned value is at most tol above
/// the true minimum. Throws std::runtime_error if max_evals is exhausted before
/// certification, i.e. the evaluation budget conflicts with the requested
/// tolerance.
///
/// prune_above shares work between related searches: intervals certified to lie
/// above min(incumbent, prune_above) - tol are discarded, so a caller taking a
/// minimum over several series can pass the best value seen so far and skip
/// regions that cannot improve it. The default pi never discards anything the
/// search itself would keep. With a foreign cutoff the reported value remains a
/// true evaluation of this series, but is only guaranteed within tol of this
/// series' minimum when that minimum is below prune_above - tol.
CircleMinResult min_angle_on_circle(const CosineSeries& f, double tol, double angle_lipschitz,
                                    std::size_t max_evals = 1000000,
                                    double prune_above = std::numbers::pi);

}  // namespace orb4
