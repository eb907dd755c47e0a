#include "spherecdf/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace {

using namespace spherecdf;

// Known-answer vectors from the Random123 distribution (kat_vectors).
TEST(Philox, KnownAnswers) {
  using A4 = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
            (A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                          {0xffffffffu, 0xffffffffu}),
            (A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                          {0xa4093822u, 0x299f31d0u}),
            (A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(RngStream, Reproducible) {
  RngStream a(1, 0);
  RngStream b(1, 0);
  EXPECT_EQ(gaussian_vector(4, a), gaussian_vector(4, b));
  RngStream c(1, 1);
  RngStream d(2, 0);
  RngStream e(1, 0);
  const auto ref = gaussian_vector(4, e);
  EXPECT_NE(gaussian_vector(4, c), ref);
  EXPECT_NE(gaussian_vector(4, d), ref);
}

TEST(RngStream, UniformsStayInsideOpenInterval) {
  RngStream rng(3, 9);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.next_uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RngStream, StreamsLookIndependent) {
  // Correlation of paired draws from neighbouring streams.
  const int n = 200000;
  double sxy = 0.0;
  RngStream a(5, 100);
  RngStream b(5, 101);
  for (int i = 0; i < n; ++i) sxy += a.next_normal() * b.next_normal();
  EXPECT_LT(std::abs(sxy / n), 5.0 / std::sqrt(static_cast<double>(n)));
}

TEST(GaussianVector, MomentBands) {
  RngStream rng(0, 0);
  const auto z = gaussian_vector(1'000'000, rng);
  const double mean = std::accumulate(z.begin(), z.end(), 0.0) / z.size();
  double var = 0.0;
  for (double v : z) var += (v - mean) * (v - mean);
  var /= static_cast<double>(z.size() - 1);
  EXPECT_GE(mean, -0.005);
  EXPECT_LE(mean, 0.005);
  EXPECT_GE(var, 0.995);
  EXPECT_LE(var, 1.005);
}

TEST(GaussianVector, RejectsEmpty) {
  RngStream rng(0, 0);
  EXPECT_THROW(gaussian_vector(0, rng), std::domain_error);
  EXPECT_THROW(sphere_sample(0, rng), std::domain_error);
}

TEST(SphereSample, UnitNormAndScaleInvariant) {
  RngStream rng(4, 0);
  for (std::size_t n : {1u, 2u, 3u, 10u, 100u, 5000u}) {
    for (int rep = 0; rep < 20; ++rep) {
      const SphereSample s = sphere_sample(n, rng);
      ASSERT_EQ(s.coords.size(), n);
      EXPECT_NEAR(euclidean_norm(s.coords), 1.0, 1e-12);
      EXPECT_NEAR(s.lambda * s.gaussian_norm / std::sqrt(static_cast<double>(n)), 1.0, 1e-12);
      EXPECT_GT(s.lambda, 0.0);
    }
  }
}

TEST(SphereSample, OneDimensionalSphereIsTwoPoints) {
  RngStream rng(6, 0);
  for (int i = 0; i < 1000; ++i) {
    const double x = sphere_sample(1, rng).coords[0];
    EXPECT_TRUE(x == 1.0 || x == -1.0) << x;
  }
}

TEST(SphereSample, GaussianNormalizationIdentity) {
  // sqrt(N) X = lambda Z componentwise, with Z recovered from the same stream.
  const std::size_t n = 64;
  RngStream for_z(9, 3);
  RngStream for_x(9, 3);
  const auto z = gaussian_vector(n, for_z);
  const SphereSample s = sphere_sample(n, for_x);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(std::sqrt(static_cast<double>(n)) * s.coords[i], s.lambda * z[i],
                1e-12 * std::max(1.0, std::abs(z[i])));
  }
}

TEST(SphereSample, LambdaMeanNearOne) {
  double sum = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    RngStream rng(0, static_cast<std::uint64_t>(i));
    sum += sphere_sample(100, rng).lambda;
  }
  const double mean = sum / draws;
  EXPECT_GE(mean, 0.995);
  EXPECT_LE(mean, 1.01);
}

TEST(LambdaOf, ExamplesAndHomogeneity) {
  const std::vector<double> ones(4, 1.0);
  EXPECT_DOUBLE_EQ(lambda_of(ones), 1.0);
  const std::vector<double> pair = {3.0, 4.0};
  EXPECT_NEAR(lambda_of(pair), std::sqrt(2.0) / 5.0, 1e-16);
  EXPECT_THROW(lambda_of(std::vector<double>{0.0, 0.0}), std::domain_error);
  EXPECT_THROW(lambda_of(std::vector<double>{}), std::domain_error);

  RngStream rng(10, 0);
  for (int i = 0; i < 50; ++i) {
    auto z = gaussian_vector(37, rng);
    const double c = 0.1 + 10.0 * rng.next_uniform();
    const double base = lambda_of(z);
    for (double& v : z) v *= c;
    EXPECT_NEAR(lambda_of(z) * c / base, 1.0, 1e-14);
  }
}

TEST(EuclideanNorm, CompensatedOnLongVectors) {
  // 10^7 entries of 0.1 plus one large entry; naive summation drifts.
  std::vector<double> v(10'000'000, 0.1);
  v.push_back(1e4);
  const double expected = std::sqrt(1e8 + 1e7 * 0.010000000000000002);
  EXPECT_NEAR(euclidean_norm(v) / expected, 1.0, 1e-14);
}

}  // namespace
