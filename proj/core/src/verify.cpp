#include "spherecdf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "spherecdf/deformation.hpp"
#include "spherecdf/normal.hpp"
#include "spherecdf/sampling.hpp"
#include "spherecdf/tail_bounds.hpp"

namespace spherecdf {

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

constexpr double kFdStep = 1e-5;
constexpr std::uint64_t kCheckSeed = 0x5eed5eedULL;

// Tracks the worst residual over a sweep.
struct Worst {
  double residual = 0.0;
  double at = 0.0;
  void update(double r, double where) {
    if (r > residual || std::isnan(r)) {
      residual = std::isnan(r) ? INFINITY : r;
      at = where;
    }
  }
};

// n + 1 evenly spaced points on [lo, hi].
template <typename F>
Worst sweep(double lo, double hi, int n, F&& residual) {
  Worst w;
  for (int k = 0; k <= n; ++k) {
    const double t = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n);
    w.update(residual(t), t);
  }
  return w;
}

double central_difference(const std::function<double(double)>& f, double t) {
  return (f(t + kFdStep) - f(t - kFdStep)) / (2.0 * kFdStep);
}

// Forward difference with one Richardson step, for functions defined only on [0, 1).
double forward_slope_at_zero(const std::function<double(double)>& f) {
  const double h = 1e-4;
  const double d1 = (f(h) - f(0.0)) / h;
  const double d2 = (f(0.5 * h) - f(0.0)) / (0.5 * h);
  return 2.0 * d2 - d1;
}

double relative_error(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
}

double positive_part(double v) { return v > 0.0 ? v : 0.0; }

class Collector {
 public:
  Collector(std::optional<double> override, VerifyScope scope) : override_(override), scope_(scope) {}

  bool wants(VerifyScope s) const { return scope_ == VerifyScope::all || scope_ == s; }

  void add(std::string name, VerifyScope s, const Worst& w, double nominal) {
    CheckResult c;
    c.name = std::move(name);
    c.scope = s;
    c.worst_residual = w.residual;
    c.argmax = w.at;
    c.tolerance = override_.value_or(nominal);
    c.passed = w.residual <= c.tolerance;
    report_.checks.push_back(std::move(c));
  }

  VerificationReport take() { return std::move(report_); }

 private:
  std::optional<double> override_;
  VerifyScope scope_;
  VerificationReport report_;
};

void lemma_checks(Collector& out, int g) {
  const auto L = VerifyScope::lemmas;

  out.add("gamma_oracle_agreement", L, sweep(0.99 / g, 0.99, g - 1, [](double t) {
            const DeformationParam p(t);
            return std::abs(gamma_closed(p).gamma - gamma_oracle(p));
          }), 1e-7);

  out.add("gap_symmetry", L, sweep(0.0, 0.99, g, [](double t) {
            const DeformationParam p(t);
            return std::abs(gamma_oracle(p, kDefaultOracleGrid, kDefaultOracleTolerance, GapSide::upper) -
                            gamma_oracle(p, kDefaultOracleGrid, kDefaultOracleTolerance, GapSide::lower));
          }), 1e-12);

  {
    RngStream rng(kCheckSeed, 1);
    Worst w;
    for (int k = 0; k < 10 * g; ++k) {
      const double x = 16.0 * rng.next_uniform() - 8.0;
      const DeformationParam t(0.99 * rng.next_uniform());
      const double lhs = phi_deformed(x, t, DeformSign::plus) - std_normal_cdf(x);
      const double rhs = std_normal_cdf(-x) - phi_deformed(-x, t, DeformSign::minus);
      w.update(std::abs(lhs - rhs), x);
    }
    out.add("pointwise_reflection", L, w, 1e-14);
  }

  out.add("gamma_le_half_t", L, sweep(0.0, 0.999, g,
          [](double t) { return positive_part(gamma_of(t) - 0.5 * t); }), 1e-12);

  {
    const double h = 0.99 / g;
    out.add("gamma_convex", L, sweep(h, 0.99 - h, g - 2, [h](double t) {
              return positive_part(-(gamma_of(t - h) - 2.0 * gamma_of(t) + gamma_of(t + h)));
            }), 1e-9);
  }

  out.add("f_plus_dominates_f_minus", L, sweep(0.0, 0.99, g,
          [](double t) { return positive_part(f_minus(t) - f_plus(t)); }), 1e-12);

  out.add("f_reflection", L, sweep(-0.99, 0.99, 2 * g,
          [](double t) { return std::abs(f_plus(t) + f_minus(-t)); }), 1e-12);

  {
    Worst w;
    w.update(std::abs(forward_slope_at_zero(gamma_of) - kTangentSlope), 0.0);
    out.add("gamma_tangent_slope", L, w, 1e-6);
  }

  out.add("g_minus_ge_t", L, sweep(0.0, 0.999, g,
          [](double t) { return positive_part(t - g_minus(t)); }), 1e-12);
  out.add("g_plus_ge_three_eighths_t", L, sweep(0.0, 0.999, g,
          [](double t) { return positive_part(0.375 * t - g_plus(t)); }), 1e-12);

  {
    const double h = 0.95 / g;
    out.add("g_minus_convex", L, sweep(h, 0.95 - h, g - 2, [h](double t) {
              return positive_part(-(g_minus(t - h) - 2.0 * g_minus(t) + g_minus(t + h)));
            }), 1e-9);
    out.add("g_plus_concave", L, sweep(h, 0.95 - h, g - 2, [h](double t) {
              return positive_part(g_plus(t - h) - 2.0 * g_plus(t) + g_plus(t + h));
            }), 1e-9);
  }

  {
    Worst w;
    w.update(std::abs(forward_slope_at_zero(g_minus) - 1.0), 0.0);
    w.update(std::abs(forward_slope_at_zero(g_plus) - 1.0), 0.0);
    out.add("g_unit_slope_at_zero", L, w, 1e-6);
  }

  out.add("g_derivative_formulas", L, sweep(0.05, 0.9, g, [](double t) {
            return std::max(relative_error(g_plus_prime(t), central_difference(g_plus, t)),
                            relative_error(g_minus_prime(t), central_difference(g_minus, t)));
          }), 1e-6);

  {
    RngStream rng(kCheckSeed, 2);
    Worst ordering;
    Worst sandwich;
    for (int k = 0; k < 10 * g; ++k) {
      const double tv = 0.99 * rng.next_uniform();
      const DeformationParam t(tv);
      const double lambda = 1.0 + tv * (2.0 * rng.next_uniform() - 1.0);
      const double x = 16.0 * rng.next_uniform() - 8.0;
      const double scaled = std_normal_cdf(x / lambda);
      const double phi = std_normal_cdf(x);
      const double gap = gamma_of(tv);
      ordering.update(positive_part(std::max(phi_deformed(x, t, DeformSign::minus) - scaled,
                                             scaled - phi_deformed(x, t, DeformSign::plus))),
                      x);
      sandwich.update(positive_part(std::max(phi - gap - scaled, scaled - phi - gap)), x);
    }
    out.add("deformation_ordering", L, ordering, 1e-15);
    out.add("rescaled_gap_sandwich", L, sandwich, 1e-12);
  }

  {
    RngStream rng(kCheckSeed, 3);
    Worst w;
    for (int k = 0; k < 20; ++k) {
      const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_uniform() * 500.0);
      const double x = 10.0 * rng.next_uniform();
      const double nd = static_cast<double>(n);
      const double y_up = nd + lm_upper(n, x).threshold;
      const double e = std::exp(-x);
      w.update(std::abs(chisq_tail_upper(n, y_up) - e), x);
      const double y_lo = nd - lm_lower(n, x).threshold;
      if (y_lo >= 0.0) w.update(std::abs(chisq_tail_lower(n, y_lo) - e), x);
    }
    out.add("chisq_rearrangement", L, w, 1e-12);
  }
}

void appendix_checks(Collector& out, int g) {
  const auto A = VerifyScope::appendix;

  {
    Worst w;
    w.update(std::abs(alpha(0.0) - 0.5), 0.0);
    w.update(std::abs(-alpha_prime(0.0) - 0.5), 0.0);
    out.add("alpha_at_zero", A, w, 1e-15);
  }

  out.add("alpha_prime_vs_fd", A, sweep(-0.9, 0.9, g,
          [](double t) { return relative_error(alpha_prime(t), central_difference(alpha, t)); }),
          1e-6);

  {
    Worst w = sweep(-0.9, 0.9, g, [](double t) {
      return relative_error(f_minus_prime(t), central_difference(f_minus, t));
    });
    for (const double t : {-0.9, -0.5, 0.0, 0.3, 0.8}) {
      w.update(relative_error(f_minus_prime(t), central_difference(f_minus, t)), t);
    }
    out.add("f_minus_prime_vs_fd", A, w, 1e-6);
  }

  out.add("f_minus_prime_positive", A, sweep(-0.99, 0.99, g,
          [](double t) { return positive_part(-f_minus_prime(t)); }), 0.0);

  {
    Worst w;
    w.update(std::abs(central_difference(f_minus, 0.0) - kTangentSlope), 0.0);
    w.update(std::abs(f_minus_prime(0.0) - kTangentSlope), 0.0);
    out.add("f_minus_tangent_slope", A, w, 1e-6);
  }

  {
    const double h = 0.9 / g;
    out.add("f_minus_concave", A, sweep(-0.9 + h, 0.9 - h, 2 * g - 2, [h](double t) {
              return positive_part(f_minus(t - h) - 2.0 * f_minus(t) + f_minus(t + h));
            }), 1e-9);
  }

  // 0 < -(1 + t) alpha'(t) < 1 with a 1e-12 margin at both ends.
  out.add("alpha_prime_sandwich", A, sweep(-0.99, 0.99, 5 * g, [](double t) {
            const double s = -(1.0 + t) * alpha_prime(t);
            return positive_part(std::max(1e-12 - s, s - (1.0 - 1e-12)));
          }), 0.0);

  // Two algebraic routes to -(1 + t) alpha'(t); cancellation limits the
  // simplified form near 0, so the sweep skips |t| < 1e-2.
  out.add("alpha_prime_forms", A, sweep(-0.99, 0.99, 2 * g, [](double t) {
            if (std::abs(t) < 1e-2) return 0.0;
            const double direct = -(1.0 + t) * alpha_prime(t);
            const double s = 2.0 + t;
            const double simplified =
                1.0 - (1.0 + t) * (1.0 + t) * (t * s - 2.0 * std::log1p(t)) / (t * t * s * s);
            return std::abs(direct - simplified);
          }), 1e-10);
}

}  // namespace

VerificationReport verify_lemmas(int grid_steps, std::optional<double> tolerance_override,
                                 VerifyScope scope) {
  if (grid_steps < 100) throw std::domain_error("verify_lemmas: grid_steps must be >= 100");
  if (tolerance_override && !(*tolerance_override >= 0.0)) {
    throw std::domain_error("verify_lemmas: tolerance must be non-negative");
  }
  Collector out(tolerance_override, scope);
  if (out.wants(VerifyScope::lemmas)) lemma_checks(out, grid_steps);
  if (out.wants(VerifyScope::appendix)) appendix_checks(out, grid_steps);
  return out.take();
}

}  // namespace spherecdf
