#include "spherecdf/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "spherecdf/normal.hpp"

namespace spherecdf {

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u;
  constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t RngStream::next_u64() {
  if (buffered_ == 0) {
    const std::array<std::uint32_t, 4> counter = {
        static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)};
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                              static_cast<std::uint32_t>(seed_ >> 32)};
    buffer_ = philox4x32_10(counter, key);
    ++block_;
    buffered_ = 2;
  }
  const int i = 2 - buffered_;
  --buffered_;
  return (static_cast<std::uint64_t>(buffer_[2 * i + 1]) << 32) | buffer_[2 * i];
}

double RngStream::next_uniform() {
  // (k + 1/2) / 2^52 is exact in binary64 and never reaches 0 or 1.
  constexpr double kScale = 1.0 / 4503599627370496.0;
  const std::uint64_t k = next_u64() >> 12;
  return (static_cast<double>(k) + 0.5) * kScale;
}

double RngStream::next_normal() { return std_normal_quantile(next_uniform()); }

std::vector<double> gaussian_vector(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::domain_error("gaussian_vector: N must be positive");
  std::vector<double> z(n);
  for (double& v : z) v = rng.next_normal();
  return z;
}

double euclidean_norm(std::span<const double> v) {
  double sum = 0.0;
  double carry = 0.0;
  for (const double x : v) {
    const double sq = x * x;
    const double next = sum + sq;
    if (std::abs(sum) >= sq) {
      carry += (sum - next) + sq;
    } else {
      carry += (sq - next) + sum;
    }
    sum = next;
  }
  return std::sqrt(sum + carry);
}

double lambda_of(std::span<const double> z) {
  if (z.empty()) throw std::domain_error("lambda_of: empty vector");
  const double norm = euclidean_norm(z);
  if (!(norm > 0.0)) throw std::domain_error("lambda_of: zero vector");
  return std::sqrt(static_cast<double>(z.size())) / norm;
}

SphereSample sphere_sample(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::domain_error("sphere_sample: N must be positive");
  for (;;) {
    std::vector<double> z = gaussian_vector(n, rng);
    const double norm = euclidean_norm(z);
    if (!(norm > 0.0) || !std::isfinite(norm)) continue;
    for (double& v : z) v /= norm;
    return {std::move(z), std::sqrt(static_cast<double>(n)) / norm, norm};
  }
}

}  // namespace spherecdf
