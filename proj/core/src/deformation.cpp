#include "spherecdf/deformation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spherecdf/detail/scalar_search.hpp"
#include "spherecdf/normal.hpp"
#include "spherecdf/tail_bounds.hpp"

namespace spherecdf {

namespace {

constexpr double kSeriesCutoff = 1e-4;
constexpr double kOracleHalfWidth = 12.0;

void require_open_unit(double t, const char* what) {
  if (!(t > -1.0 && t < 1.0)) {
    throw std::domain_error(std::string(what) + ": t must lie in (-1, 1)");
  }
}

// d/dt [ln(1 + t) / t]
double log1p_ratio_prime(double t) {
  if (std::abs(t) < kSeriesCutoff) {
    return -0.5 + t * (2.0 / 3.0 + t * (-0.75 + t * (0.8 - t * (5.0 / 6.0))));
  }
  return (t / (1.0 + t) - std::log1p(t)) / (t * t);
}

// Closed forms continued to (-1, 1).
double x_plus_extended(double t) {
  const double one_minus = 1.0 - t;
  return std::sqrt(2.0 * one_minus * one_minus / (2.0 - t) * log1p_ratio(-t));
}

double x_minus_extended(double t) {
  const double one_plus = 1.0 + t;
  return -std::sqrt(2.0 * one_plus * one_plus / (2.0 + t) * log1p_ratio(t));
}

}  // namespace

DeformationParam::DeformationParam(double t) : t_(t) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw std::domain_error("DeformationParam: t must lie in [0, 1), got " + std::to_string(t));
  }
}

double phi_deformed(double x, DeformationParam t, DeformSign sign) {
  const double sgn = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  const double orientation = sign == DeformSign::plus ? -1.0 : 1.0;
  return std_normal_cdf(x / (1.0 + orientation * sgn * t.value()));
}

double log1p_ratio(double t) {
  if (!(t > -1.0)) throw std::domain_error("log1p_ratio: t must exceed -1");
  if (std::abs(t) < kSeriesCutoff) {
    return 1.0 + t * (-0.5 + t * (1.0 / 3.0 + t * (-0.25 + t * (0.2 - t / 6.0))));
  }
  return std::log1p(t) / t;
}

double x_plus(double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("x_plus: t must lie in (0, 1)");
  return x_plus_extended(t);
}

double x_minus(double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("x_minus: t must lie in (0, 1)");
  return x_minus_extended(t);
}

GapEvaluation gamma_closed(DeformationParam t) {
  if (t.value() == 0.0) return {t, 0.0, std::nullopt};
  const double x = x_plus_extended(t.value());
  const double gap = std_normal_cdf(x / (1.0 - t.value())) - std_normal_cdf(x);
  return {t, gap, x};
}

double gamma_of(double t) { return gamma_closed(DeformationParam(t)).gamma; }

double gamma_oracle(DeformationParam t, int grid_points, double refine_tolerance, GapSide side) {
  if (grid_points < 1000) throw std::domain_error("gamma_oracle: grid_points must be >= 1000");
  if (!(refine_tolerance > 0.0)) {
    throw std::domain_error("gamma_oracle: refine_tolerance must be positive");
  }
  auto diff = [t, side](double x) {
    if (side == GapSide::upper) return phi_deformed(x, t, DeformSign::plus) - std_normal_cdf(x);
    return std_normal_cdf(x) - phi_deformed(x, t, DeformSign::minus);
  };

  const double step = 2.0 * kOracleHalfWidth / static_cast<double>(grid_points - 1);
  auto grid = [step](int k) { return -kOracleHalfWidth + step * static_cast<double>(k); };

  // The difference is unimodal on each open half-line and vanishes at 0, so
  // each side is bracketed by the neighbours of its coarse argmax.
  int best_neg = -1;
  int best_pos = -1;
  double val_neg = -1.0;
  double val_pos = -1.0;
  for (int k = 0; k < grid_points; ++k) {
    const double x = grid(k);
    const double v = diff(x);
    if (x < 0.0 && v > val_neg) {
      val_neg = v;
      best_neg = k;
    } else if (x > 0.0 && v > val_pos) {
      val_pos = v;
      best_pos = k;
    }
  }

  double sup = 0.0;
  if (best_neg >= 0) {
    const double lo = best_neg > 0 ? grid(best_neg - 1) : -kOracleHalfWidth;
    const double hi = std::min(grid(best_neg + 1), 0.0);
    sup = std::max(sup, detail::golden_section_maximize(diff, lo, hi, refine_tolerance).value);
  }
  if (best_pos >= 0) {
    const double lo = std::max(grid(best_pos - 1), 0.0);
    const double hi = best_pos + 1 < grid_points ? grid(best_pos + 1) : kOracleHalfWidth;
    sup = std::max(sup, detail::golden_section_maximize(diff, lo, hi, refine_tolerance).value);
  }
  return sup;
}

double f_minus(double t) {
  require_open_unit(t, "f_minus");
  const double x = x_minus_extended(t);
  return std_normal_cdf(x / (1.0 + t)) - std_normal_cdf(x);
}

double f_plus(double t) {
  require_open_unit(t, "f_plus");
  const double x = x_plus_extended(t);
  return std_normal_cdf(x / (1.0 - t)) - std_normal_cdf(x);
}

double alpha(double t) {
  require_open_unit(t, "alpha");
  return log1p_ratio(t) / (2.0 + t);
}

double alpha_prime(double t) {
  require_open_unit(t, "alpha_prime");
  const double two_plus = 2.0 + t;
  return log1p_ratio_prime(t) / two_plus - log1p_ratio(t) / (two_plus * two_plus);
}

double f_minus_prime(double t) {
  require_open_unit(t, "f_minus_prime");
  const double a = alpha(t);
  return std::exp(-a) / kSqrt2Pi * std::sqrt(2.0 * a) / (1.0 + t);
}

double secant_interval(double slope, SecantKind which) {
  // Both ratios gamma(t)/t and g+(t)/t are monotone on (0, 1), so the
  // feasible set is an interval starting at 0.
  constexpr double kUpper = 1.0 - 1e-12;
  constexpr double kRootTolerance = 1e-14;

  double (*ratio)(double);
  bool increasing;
  if (which == SecantKind::gamma_upper) {
    if (!(slope > kTangentSlope && slope <= 0.5)) {
      throw std::domain_error("secant_interval: gamma slope must lie in (1/sqrt(2 pi e), 1/2]");
    }
    if (slope == 0.5) return 1.0;
    ratio = [](double t) { return gamma_of(t) / t; };
    increasing = true;
  } else {
    if (!(slope >= 0.375 && slope < 1.0)) {
      throw std::domain_error("secant_interval: g+ slope must lie in [3/8, 1)");
    }
    if (slope == 0.375) return 1.0;
    ratio = [](double t) { return g_plus(t) / t; };
    increasing = false;
  }

  // violation(t) > 0 where the linear bound fails.
  auto violation = [&](double t) {
    const double gap = ratio(t) - slope;
    return increasing ? gap : -gap;
  };
  if (violation(kUpper) <= 0.0) return 1.0;

  double lo = 0.5;
  while (violation(lo) > 0.0 && lo > 1e-9) lo *= 0.5;
  if (violation(lo) > 0.0) return lo;
  double hi = kUpper;
  while (hi - lo > kRootTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (violation(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo;
}

}  // namespace spherecdf
