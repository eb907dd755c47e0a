#pragma once

#include <cmath>
#include <utility>

namespace spherecdf::detail {

struct ScalarOptimum {
  double x;
  double value;
};

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
/// Returns the best point evaluated, including both bracket ends.
template <typename F>
ScalarOptimum golden_section_maximize(F&& f, double lo, double hi, double tolerance) {
  constexpr double kInvPhi = 0.61803398874989484820;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  ScalarOptimum best{a, f(a)};
  if (const double fb = f(b); fb > best.value) best = {b, fb};
  while (b - a > tolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    if (fc > best.value) best = {c, fc};
    if (fd > best.value) best = {d, fd};
  }
  return best;
}

template <typename F>
ScalarOptimum golden_section_minimize(F&& f, double lo, double hi, double tolerance) {
  auto neg = [&f](double x) { return -f(x); };
  const ScalarOptimum r = golden_section_maximize(neg, lo, hi, tolerance);
  return {r.x, -r.value};
}

/// Bisection for a sign change of f on [lo, hi]; f(lo) and f(hi) must have
/// opposite signs (or one of them is zero). Returns the bracketing midpoint
/// once the bracket is narrower than tolerance.
template <typename F>
double bisect_root(F&& f, double lo, double hi, double tolerance, int max_iterations = 400) {
  double f_lo = f(lo);
  if (f_lo == 0.0) return lo;
  for (int i = 0; i < max_iterations && hi - lo > tolerance; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace spherecdf::detail
