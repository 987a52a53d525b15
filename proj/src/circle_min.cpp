#include "orb4/circle_min.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace orb4 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double clamped_acos(double x) {
  if (x >= 1.0) return 0.0;
  if (x <= -1.0) return std::numbers::pi;
  return std::acos(x);
}

// Exact maximum of cos over a phase interval of the given width starting at
// p_lo. cos has interior maxima only at multiples of 2 pi, so after reducing
// the start into [0, 2 pi) the maximum is either 1 (a multiple is swept) or
// attained at an endpoint.
double cos_interval_max(double p_lo, double width) {
  if (width >= kTwoPi) return 1.0;
  double q = std::fmod(p_lo, kTwoPi);
  if (q < 0.0) q += kTwoPi;
  if (q == 0.0 || q + width >= kTwoPi) return 1.0;
  return std::max(std::cos(q), std::cos(q + width));
}

struct Interval {
  double a, b;
  double ga, gb;  // g = acos(clamp(f)) at the endpoints
  double lb;      // certified lower bound for g on [a, b]
};

struct LbGreater {
  bool operator()(const Interval& x, const Interval& y) const { return x.lb > y.lb; }
};

// Two routes to a lower bound on g over [a, b]:
//  - from g's own Lipschitz constant, anchored at both endpoints;
//  - from the exact term-by-term maximum of f over the interval, pushed
//    through the decreasing map acos. This one survives where the first is
//    useless, e.g. when f hovers near +1 and g's slope bound is far too
//    pessimistic, and it collapses quadratically around a peak of f.
double interval_bound(const Interval& iv, const CosineSeries& f, double lip_g) {
  const double w = iv.b - iv.a;
  const double from_angle = 0.5 * (iv.ga + iv.gb) - 0.5 * lip_g * w;
  double f_upper = 0.0;
  for (const CosineSeries::Term& t : f.terms()) {
    const double p_lo = std::min(t.freq * iv.a, t.freq * iv.b) + t.phase;
    f_upper += t.amp * cos_interval_max(p_lo, std::abs(t.freq) * w);
  }
  const double from_f = clamped_acos(f_upper);
  return std::max({from_angle, from_f, 0.0});
}

}  // namespace

void CosineSeries::add(double amp, double freq, double phase) {
  if (amp == 0.0) return;
  if (amp < 0.0) {
    amp = -amp;
    phase += std::numbers::pi;
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    Term& t = terms_[i];
    if (t.freq != freq) continue;
    const std::complex<double> merged = std::polar(t.amp, t.phase) + std::polar(amp, phase);
    if (std::abs(merged) == 0.0) {
      terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      t.amp = std::abs(merged);
      t.phase = std::arg(merged);
    }
    return;
  }
  terms_.push_back({amp, freq, phase});
}

double CosineSeries::eval(double theta) const {
  double s = 0.0;
  for (const Term& t : terms_) s += t.amp * std::cos(t.freq * theta + t.phase);
  return s;
}

double CosineSeries::slope_bound() const {
  double s = 0.0;
  for (const Term& t : terms_) s += std::abs(t.amp * t.freq);
  return s;
}

CircleMinResult min_angle_on_circle(const CosineSeries& f, double tol, double angle_lipschitz,
                                    std::size_t max_evals, double prune_above) {
  if (tol <= 0.0) throw std::invalid_argument("min_angle_on_circle: tol must be positive");
  if (angle_lipschitz < 0.0)
    throw std::invalid_argument("min_angle_on_circle: negative Lipschitz bound");

  const double lip_g = angle_lipschitz;

  CircleMinResult res;
  res.value = std::numbers::pi;

  auto eval_g = [&](double theta) {
    if (res.evals >= max_evals)
      throw std::runtime_error(
          "min_angle_on_circle: evaluation budget exhausted before the requested tolerance "
          "could be certified");
    ++res.evals;
    const double g = clamped_acos(f.eval(theta));
    if (g < res.value) {
      res.value = g;
      res.theta = theta;
    }
    return g;
  };

  // Seed grid. theta = 0 is always a node so the identity rotation is probed
  // exactly; density scales with the slope so high-frequency series start
  // with a usable cover.
  std::size_t n0 = static_cast<std::size_t>(8.0 * std::ceil(std::max(lip_g, 1.0))) + 9;
  n0 = std::clamp<std::size_t>(n0, 33, 1025);
  const double step = kTwoPi / static_cast<double>(n0 - 1);

  std::vector<double> gs(n0);
  for (std::size_t i = 0; i < n0; ++i) gs[i] = eval_g(static_cast<double>(i) * step);

  std::priority_queue<Interval, std::vector<Interval>, LbGreater> queue;
  for (std::size_t i = 0; i + 1 < n0; ++i) {
    Interval iv{static_cast<double>(i) * step, static_cast<double>(i + 1) * step,
                gs[i], gs[i + 1], 0.0};
    iv.lb = interval_bound(iv, f, lip_g);
    queue.push(iv);
  }

  res.lower_bound = 0.0;
  while (!queue.empty()) {
    Interval top = queue.top();
    if (top.lb >= std::min(res.value, prune_above) - tol) {
      res.lower_bound = top.lb;
      break;
    }
    queue.pop();
    const double mid = 0.5 * (top.a + top.b);
    const double gm = eval_g(mid);
    Interval left{top.a, mid, top.ga, gm, 0.0};
    Interval right{mid, top.b, gm, top.gb, 0.0};
    left.lb = interval_bound(left, f, lip_g);
    right.lb = interval_bound(right, f, lip_g);
    queue.push(left);
    queue.push(right);
  }

  // Local polish around the incumbent. Certification already happened; this
  // only sharpens the reported value, so it runs outside the budget check.
  double lo = res.theta - step;
  double hi = res.theta + step;
  for (int it = 0; it < 80 && hi - lo > 1e-8; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (clamped_acos(f.eval(m1)) <= clamped_acos(f.eval(m2)))
      hi = m2;
    else
      lo = m1;
  }
  const double theta_p = 0.5 * (lo + hi);
  const double g_p = clamped_acos(f.eval(theta_p));
  if (g_p < res.value) {
    res.value = g_p;
    res.theta = theta_p;
  }
  return res;
}

}  // namespace orb4
