#pragma once

namespace spherecdf {

inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;
inline constexpr double kPi = 3.14159265358979323846;

/// 1/sqrt(2*pi*e): common slope of f+ and f- at the origin.
inline constexpr double kTangentSlope = 0.24197072451914334980;

/// Standard Gaussian density.
double std_normal_pdf(double x);

/// Standard Gaussian CDF, evaluated through erfc so both tails keep their
/// relative accuracy. Throws std::domain_error for non-finite x.
double std_normal_cdf(double x);

/// Upper tail 1 - Phi(x) without cancellation.
double std_normal_sf(double x);

/// Inverse of the standard Gaussian CDF for p in (0, 1).
///
/// Rational approximation (Acklam) followed by one Halley step against
/// std_normal_cdf; the result is accurate to a few ulps over the range of
/// 52-bit uniforms used by the samplers.
double std_normal_quantile(double p);

}  // namespace spherecdf
