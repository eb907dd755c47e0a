#pragma once

#include <optional>

namespace spherecdf {

/// Scale-deviation parameter t in [0, 1).
class DeformationParam {
 public:
  /// Throws std::domain_error unless 0 <= t < 1.
  explicit DeformationParam(double t);

  double value() const noexcept { return t_; }

  friend bool operator==(DeformationParam, DeformationParam) = default;

 private:
  double t_;
};

enum class DeformSign { plus, minus };

/// Phi^{+/-}_t(x) = Phi(x / (1 -/+ sgn(x) t)).
double phi_deformed(double x, DeformationParam t, DeformSign sign);

/// ln(1 + t) / t on (-1, 1), continued to 1 at t = 0.
double log1p_ratio(double t);

/// Positive critical point of Phi^+_t - Phi, t in (0, 1).
double x_plus(double t);
/// Negative critical point of Phi^+_t - Phi, t in (0, 1).
double x_minus(double t);

struct GapEvaluation {
  DeformationParam t;
  double gamma;
  /// x+(t); empty at t = 0 where every x is a maximizer.
  std::optional<double> maximizer_x;
};

/// gamma(t) = sup_x (Phi^+_t(x) - Phi(x)) via the closed-form maximizer.
GapEvaluation gamma_closed(DeformationParam t);

/// Shorthand for gamma_closed(t).gamma with an unchecked-type argument.
double gamma_of(double t);

/// Which difference the brute-force supremum is taken over.
enum class GapSide {
  upper,  ///< Phi^+_t - Phi
  lower,  ///< Phi - Phi^-_t
};

inline constexpr int kDefaultOracleGrid = 20001;
inline constexpr double kDefaultOracleTolerance = 1e-10;

/// Brute-force supremum of the chosen difference over a uniform grid on
/// [-12, 12], refined by golden-section search on each half-line.
///
/// Shares nothing with gamma_closed except std_normal_cdf. Outside the
/// window both differences are bounded by Phi(-12 / (1 + t)) < 1e-9, which
/// is smaller than the value already attained inside, so the window does not
/// change the supremum. Requires grid_points >= 1000.
double gamma_oracle(DeformationParam t, int grid_points = kDefaultOracleGrid,
                    double refine_tolerance = kDefaultOracleTolerance,
                    GapSide side = GapSide::upper);

/// f-(t) = Phi(x-(t) / (1 + t)) - Phi(x-(t)), smooth on (-1, 1).
double f_minus(double t);
/// f+(t) = Phi(x+(t) / (1 - t)) - Phi(x+(t)), smooth on (-1, 1); equals gamma on [0, 1).
double f_plus(double t);

/// alpha(t) = ln(1 + t) / (t (2 + t)) on (-1, 1), alpha(0) = 1/2.
double alpha(double t);
double alpha_prime(double t);

/// Closed form f-'(t) = e^{-alpha} / sqrt(2 pi) * sqrt(2 alpha) / (1 + t).
double f_minus_prime(double t);

enum class SecantKind {
  gamma_upper,  ///< gamma(t) <= slope * t
  gplus_lower,  ///< g+(t) >= slope * t
};

/// Largest t* in (0, 1] such that the chosen linear bound holds on [0, t*].
/// Returns 1 when it holds on all of [0, 1).
double secant_interval(double slope, SecantKind which);

}  // namespace spherecdf
