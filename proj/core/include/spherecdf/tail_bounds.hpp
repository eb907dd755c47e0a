#pragma once

#include <cstdint>

#include "spherecdf/deformation.hpp"

namespace spherecdf {

/// g+(t) = (1 - 1/(1+t)^2) / 2 on [0, 1).
double g_plus(double t);
/// g-(t) = (sqrt(2/(1-t)^2 - 1) - 1) / 2 on [0, 1); diverges as t -> 1.
double g_minus(double t);

/// Closed-form derivatives of g+ and g-, valid on (-1, 1) and (1 - sqrt 2, 1).
double g_plus_prime(double t);
double g_minus_prime(double t);

/// 2 exp(-2 N eps^2).
double dkw_bound(std::int64_t n, double epsilon);

/// A chi-square tail bound exp(-x) together with the deviation it certifies.
struct LaurentMassartBound {
  double bound;
  double threshold;
};

/// Pr(U - N >= 2 sqrt(N x) + 2 x) <= exp(-x) for U ~ chi^2_N.
LaurentMassartBound lm_upper(std::int64_t n, double x);
/// Pr(N - U >= 2 sqrt(N x)) <= exp(-x) for U ~ chi^2_N.
LaurentMassartBound lm_lower(std::int64_t n, double x);

/// Bound on Pr(U > y) for y >= N, rewritten in terms of the threshold.
double chisq_tail_upper(std::int64_t n, double y);
/// Bound on Pr(U < y) for 0 <= y <= N.
double chisq_tail_lower(std::int64_t n, double y);

/// Pr(|1 - lambda| > t) <= exp(-N g+^2) + exp(-N g-^2), lambda = sqrt(N) / |Z|.
double lambda_concentration_bound(std::int64_t n, double t);

class BoundInputs {
 public:
  /// Throws std::domain_error unless n >= 1 and epsilon > 0.
  BoundInputs(std::int64_t n, double epsilon, DeformationParam t);

  std::int64_t n() const noexcept { return n_; }
  double epsilon() const noexcept { return epsilon_; }
  DeformationParam t() const noexcept { return t_; }

 private:
  std::int64_t n_;
  double epsilon_;
  DeformationParam t_;
};

/// The three terms of the tail bound and the KS threshold they apply to.
/// A total above 1 is vacuous but is reported unclamped.
struct BoundBreakdown {
  double dkw_term = 0.0;
  double gplus_term = 0.0;
  double gminus_term = 0.0;
  double total = 0.0;
  double threshold = 0.0;
};

/// Pr(d_KS > eps + gamma(t)) <= 2 e^{-2 N eps^2} + e^{-N g+^2} + e^{-N g-^2}.
BoundBreakdown theorem_bound(const BoundInputs& inputs);

/// Pr(d_KS > eps + t/2) <= 2 e^{-2 N eps^2} + e^{-(9/64) N t^2} + e^{-N t^2}.
BoundBreakdown corollary_bound(const BoundInputs& inputs);
BoundBreakdown corollary_bound(std::int64_t n, double epsilon, double t);

enum class SplitMode { exact_gamma, corollary };

struct OptimizedBound {
  double delta = 0.0;
  double best_epsilon = 0.0;
  double best_t = 0.0;
  double best_total = 0.0;
  SplitMode mode = SplitMode::exact_gamma;
};

inline constexpr int kSplitGridPoints = 512;

/// Largest feasible deformation for a total budget delta: the root of
/// cost(t) = delta, or just below 1 when the cost never reaches delta.
double split_t_max(double delta, SplitMode mode);

/// Minimizes the tail bound over splits delta = eps + cost(t), where cost is
/// gamma(t) or t/2. Coarse grid over [0, t_max) followed by golden-section
/// refinement around the best grid point.
OptimizedBound optimize_split(std::int64_t n, double delta, SplitMode mode = SplitMode::exact_gamma);

/// Conservative bound on Pr(d_KS(F_{sqrt(N) X}, Phi) > observed_ks) for X
/// uniform on the sphere, clamped to 1.
double p_value_bound(std::int64_t n, double observed_ks);

}  // namespace spherecdf
