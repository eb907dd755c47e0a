#include "spherecdf/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spherecdf/normal.hpp"

namespace spherecdf {

EmpiricalCdfView::EmpiricalCdfView(std::span<const double> values)
    : sorted_(values.begin(), values.end()) {
  if (sorted_.empty()) throw std::domain_error("build_ecdf: empty sample");
  for (const double v : sorted_) {
    if (!std::isfinite(v)) throw std::domain_error("build_ecdf: non-finite sample value");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdfView::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

EmpiricalCdfView build_ecdf(std::span<const double> values) { return EmpiricalCdfView(values); }

KsResult ks_to_normal(const EmpiricalCdfView& ecdf) {
  const auto values = ecdf.sorted_values();
  const double n = static_cast<double>(values.size());
  KsResult best{-1.0, values.front(), KsSide::upper};
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double phi = std_normal_cdf(values[i]);
    const double above = static_cast<double>(i + 1) / n - phi;
    const double below = phi - static_cast<double>(i) / n;
    if (above > best.statistic) best = {above, values[i], KsSide::upper};
    if (below > best.statistic) best = {below, values[i], KsSide::lower};
  }
  return best;
}

EmpiricalCdfView rescale_cdf(const EmpiricalCdfView& ecdf, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("rescale_cdf: lambda must be positive and finite");
  }
  std::vector<double> scaled(ecdf.sorted_values().begin(), ecdf.sorted_values().end());
  for (double& v : scaled) v *= lambda;
  return EmpiricalCdfView(EmpiricalCdfView::Presorted{}, std::move(scaled));
}

bool check_tube_inflation(const EmpiricalCdfView& ecdf, double lambda, double epsilon,
                          DeformationParam t, double slack) {
  if (!(lambda > 0.0) || !(epsilon > 0.0)) {
    throw std::domain_error("check_tube_inflation: lambda and epsilon must be positive");
  }
  if (ks_to_normal(ecdf).statistic > epsilon) return true;
  if (std::abs(1.0 - lambda) > t.value()) return true;
  const double rescaled = ks_to_normal(rescale_cdf(ecdf, lambda)).statistic;
  return rescaled <= epsilon + gamma_closed(t).gamma + slack;
}

}  // namespace spherecdf
