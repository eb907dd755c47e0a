#include "spherecdf/tail_bounds.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "spherecdf/detail/scalar_search.hpp"

namespace spherecdf {

namespace {

void require_t(double t, const char* what) {
  if (!(t >= 0.0 && t < 1.0)) throw std::domain_error(std::string(what) + ": t must lie in [0, 1)");
}

void require_n(std::int64_t n, const char* what) {
  if (n < 1) throw std::domain_error(std::string(what) + ": N must be positive");
}

// exp(-N c^2) with the exponent formed first; underflows to 0 rather than
// overflowing for very large N.
double exp_neg_n_sq(std::int64_t n, double c) { return std::exp(-(static_cast<double>(n) * c * c)); }

}  // namespace

double g_plus(double t) {
  require_t(t, "g_plus");
  const double s = 1.0 + t;
  return 0.5 * (1.0 - 1.0 / (s * s));
}

double g_minus(double t) {
  require_t(t, "g_minus");
  const double s = 1.0 - t;
  return 0.5 * (std::sqrt(2.0 / (s * s) - 1.0) - 1.0);
}

double g_plus_prime(double t) {
  if (!(t > -1.0 && t < 1.0)) throw std::domain_error("g_plus_prime: t must lie in (-1, 1)");
  const double s = 1.0 + t;
  return 1.0 / (s * s * s);
}

double g_minus_prime(double t) {
  if (!(t > 1.0 - std::sqrt(2.0) && t < 1.0)) {
    throw std::domain_error("g_minus_prime: t must lie in (1 - sqrt 2, 1)");
  }
  const double s = 1.0 - t;
  return 1.0 / (s * s * std::sqrt(1.0 + 2.0 * t - t * t));
}

double dkw_bound(std::int64_t n, double epsilon) {
  require_n(n, "dkw_bound");
  if (!(epsilon > 0.0)) throw std::domain_error("dkw_bound: epsilon must be positive");
  return 2.0 * std::exp(-2.0 * static_cast<double>(n) * epsilon * epsilon);
}

LaurentMassartBound lm_upper(std::int64_t n, double x) {
  require_n(n, "lm_upper");
  if (!(x >= 0.0)) throw std::domain_error("lm_upper: x must be non-negative");
  const double nd = static_cast<double>(n);
  return {std::exp(-x), 2.0 * std::sqrt(nd * x) + 2.0 * x};
}

LaurentMassartBound lm_lower(std::int64_t n, double x) {
  require_n(n, "lm_lower");
  if (!(x >= 0.0)) throw std::domain_error("lm_lower: x must be non-negative");
  const double nd = static_cast<double>(n);
  return {std::exp(-x), 2.0 * std::sqrt(nd * x)};
}

double chisq_tail_upper(std::int64_t n, double y) {
  require_n(n, "chisq_tail_upper");
  const double nd = static_cast<double>(n);
  if (!(y >= nd) || !std::isfinite(y)) throw std::domain_error("chisq_tail_upper: y must be >= N");
  const double root = std::sqrt(1.0 - 2.0 * (1.0 - y / nd)) - 1.0;
  return std::exp(-0.25 * nd * root * root);
}

double chisq_tail_lower(std::int64_t n, double y) {
  require_n(n, "chisq_tail_lower");
  const double nd = static_cast<double>(n);
  if (!(y >= 0.0 && y <= nd)) throw std::domain_error("chisq_tail_lower: y must lie in [0, N]");
  const double dev = y / nd - 1.0;
  return std::exp(-0.25 * nd * dev * dev);
}

double lambda_concentration_bound(std::int64_t n, double t) {
  require_n(n, "lambda_concentration_bound");
  return exp_neg_n_sq(n, g_plus(t)) + exp_neg_n_sq(n, g_minus(t));
}

BoundInputs::BoundInputs(std::int64_t n, double epsilon, DeformationParam t)
    : n_(n), epsilon_(epsilon), t_(t) {
  require_n(n, "BoundInputs");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::domain_error("BoundInputs: epsilon must be positive and finite");
  }
}

BoundBreakdown theorem_bound(const BoundInputs& inputs) {
  const double t = inputs.t().value();
  BoundBreakdown out;
  out.dkw_term = dkw_bound(inputs.n(), inputs.epsilon());
  out.gplus_term = exp_neg_n_sq(inputs.n(), g_plus(t));
  out.gminus_term = exp_neg_n_sq(inputs.n(), g_minus(t));
  out.total = out.dkw_term + out.gplus_term + out.gminus_term;
  out.threshold = inputs.epsilon() + gamma_closed(inputs.t()).gamma;
  return out;
}

BoundBreakdown corollary_bound(const BoundInputs& inputs) {
  const double t = inputs.t().value();
  BoundBreakdown out;
  out.dkw_term = dkw_bound(inputs.n(), inputs.epsilon());
  out.gplus_term = exp_neg_n_sq(inputs.n(), 0.375 * t);
  out.gminus_term = exp_neg_n_sq(inputs.n(), t);
  out.total = out.dkw_term + out.gplus_term + out.gminus_term;
  out.threshold = inputs.epsilon() + 0.5 * t;
  return out;
}

BoundBreakdown corollary_bound(std::int64_t n, double epsilon, double t) {
  return corollary_bound(BoundInputs(n, epsilon, DeformationParam(t)));
}

namespace {

constexpr double kTCeiling = 1.0 - 1e-12;

double split_cost(double t, SplitMode mode) {
  return mode == SplitMode::exact_gamma ? gamma_of(t) : 0.5 * t;
}

}  // namespace

double split_t_max(double delta, SplitMode mode) {
  if (!(delta > 0.0)) throw std::domain_error("split_t_max: delta must be positive");
  if (split_cost(kTCeiling, mode) <= delta) return kTCeiling;
  return detail::bisect_root([&](double t) { return split_cost(t, mode) - delta; }, 0.0, kTCeiling,
                             1e-12);
}

OptimizedBound optimize_split(std::int64_t n, double delta, SplitMode mode) {
  require_n(n, "optimize_split");
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::domain_error("optimize_split: delta must be positive and finite");
  }
  const double t_max = split_t_max(delta, mode);

  // Infeasible splits (eps <= 0) score +inf so the search never returns them.
  auto total_at = [&](double t) {
    const double eps = delta - split_cost(t, mode);
    if (!(eps > 0.0)) return std::numeric_limits<double>::infinity();
    const BoundInputs in(n, eps, DeformationParam(t));
    return mode == SplitMode::exact_gamma ? theorem_bound(in).total : corollary_bound(in).total;
  };

  const double step = t_max / kSplitGridPoints;
  int best_k = 0;
  double best_total = total_at(0.0);
  for (int k = 1; k < kSplitGridPoints; ++k) {
    const double v = total_at(step * k);
    if (v < best_total) {
      best_total = v;
      best_k = k;
    }
  }
  double best_t = step * best_k;

  const double lo = best_k > 0 ? step * (best_k - 1) : 0.0;
  const double hi = step * (best_k + 1);
  const detail::ScalarOptimum refined = detail::golden_section_minimize(total_at, lo, hi, 1e-12);
  if (refined.value < best_total) {
    best_total = refined.value;
    best_t = refined.x;
  }

  OptimizedBound out;
  out.delta = delta;
  out.best_t = best_t;
  out.best_epsilon = delta - split_cost(best_t, mode);
  out.best_total = best_total;
  out.mode = mode;
  return out;
}

double p_value_bound(std::int64_t n, double observed_ks) {
  if (!(observed_ks > 0.0 && observed_ks <= 1.0)) {
    throw std::domain_error("p_value_bound: observed KS statistic must lie in (0, 1]");
  }
  return std::min(1.0, optimize_split(n, observed_ks, SplitMode::exact_gamma).best_total);
}

}  // namespace spherecdf
