#include "spherecdf/normal.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace {

using spherecdf::std_normal_cdf;
using spherecdf::std_normal_quantile;

// Maclaurin series of erf in long double; converges quickly for |x| <= 3.
long double erf_series(long double x) {
  long double term = x;
  long double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x * x / n;
    sum += term / (2 * n + 1);
    if (std::fabs(term) < 1e-30L) break;
  }
  return sum * 2.0L / std::sqrt(3.14159265358979323846264338327950288L);
}

long double phi_series(long double x) {
  return 0.5L * (1.0L + erf_series(x / std::sqrt(2.0L)));
}

TEST(StdNormalCdf, CenterAndLimits) {
  EXPECT_EQ(std_normal_cdf(0.0), 0.5);
  EXPECT_NEAR(std_normal_cdf(40.0), 1.0, 1e-15);
  EXPECT_NEAR(std_normal_cdf(-40.0), 0.0, 1e-15);
}

TEST(StdNormalCdf, MatchesSeriesOracle) {
  EXPECT_NEAR(std_normal_cdf(1.0), 0.84134474606854294859, 1e-15);
  for (int k = -400; k <= 400; ++k) {
    const double x = k * 0.01;
    EXPECT_NEAR(std_normal_cdf(x), static_cast<double>(phi_series(x)), 1e-15) << x;
  }
}

TEST(StdNormalCdf, SymmetricAndMonotone) {
  double prev = 0.0;
  for (int k = -1200; k <= 1200; ++k) {
    const double x = k * 0.01;
    const double v = std_normal_cdf(x);
    EXPECT_NEAR(v + std_normal_cdf(-x), 1.0, 1e-15);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(StdNormalCdf, RejectsNonFinite) {
  EXPECT_THROW(std_normal_cdf(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  EXPECT_THROW(std_normal_cdf(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST(StdNormalQuantile, InvertsCdf) {
  EXPECT_EQ(std_normal_quantile(0.5), 0.0);
  EXPECT_NEAR(std_normal_quantile(0.975), 1.959963984540054, 1e-12);
  for (double p : {1e-300, 1e-100, 1e-15, 1e-6, 0.01, 0.02425, 0.1, 0.3, 0.49}) {
    const double x = std_normal_quantile(p);
    EXPECT_NEAR(std_normal_cdf(x) / p, 1.0, 1e-13) << p;
    if (p >= 1e-6) EXPECT_NEAR(std_normal_quantile(1.0 - p), -x, 1e-9 * std::abs(x)) << p;
  }
}

TEST(StdNormalQuantile, RejectsOutsideOpenUnit) {
  EXPECT_THROW(std_normal_quantile(0.0), std::domain_error);
  EXPECT_THROW(std_normal_quantile(1.0), std::domain_error);
}

}  // namespace
