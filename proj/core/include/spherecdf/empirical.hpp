#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spherecdf/deformation.hpp"

namespace spherecdf {

/// Right-continuous empirical CDF over an immutable sorted copy of a sample.
class EmpiricalCdfView {
 public:
  /// Sorts a copy of values. Throws std::domain_error for an empty sample
  /// or non-finite entries.
  explicit EmpiricalCdfView(std::span<const double> values);

  /// (#values <= x) / N.
  double operator()(double x) const;

  std::span<const double> sorted_values() const noexcept { return sorted_; }
  std::size_t size() const noexcept { return sorted_.size(); }

 private:
  struct Presorted {};
  EmpiricalCdfView(Presorted, std::vector<double> sorted) : sorted_(std::move(sorted)) {}
  friend EmpiricalCdfView rescale_cdf(const EmpiricalCdfView&, double);

  std::vector<double> sorted_;
};

EmpiricalCdfView build_ecdf(std::span<const double> values);

enum class KsSide {
  upper,  ///< the empirical CDF exceeds Phi at the witness
  lower,  ///< Phi exceeds the left limit of the empirical CDF at the witness
};

struct KsResult {
  double statistic = 0.0;
  double argmax_location = 0.0;
  KsSide side = KsSide::upper;
};

/// Exact sup_x |F(x) - Phi(x)|, from the jump points:
/// max_i max(i/N - Phi(x_(i)), Phi(x_(i)) - (i-1)/N). The witness is the
/// lowest sorted index attaining the maximum.
KsResult ks_to_normal(const EmpiricalCdfView& ecdf);

/// F_lambda(x) = F(x / lambda). Throws std::domain_error unless lambda > 0.
EmpiricalCdfView rescale_cdf(const EmpiricalCdfView& ecdf, double lambda);

/// Property predicate for tube inflation: when d_KS(F, Phi) <= eps and
/// |1 - lambda| <= t, checks d_KS(F_lambda, Phi) <= eps + gamma(t) + slack.
/// Returns true when either hypothesis fails.
bool check_tube_inflation(const EmpiricalCdfView& ecdf, double lambda, double epsilon,
                          DeformationParam t, double slack = 1e-12);

}  // namespace spherecdf
