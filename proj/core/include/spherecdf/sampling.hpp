#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace spherecdf {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3").
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based random stream keyed by (seed, stream_id).
///
/// The seed is the Philox key and the stream id occupies the upper half of
/// the counter, so streams never overlap and each draw is a pure function of
/// (seed, stream_id, position).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1) with 52 bits of resolution.
  double next_uniform();

  /// Standard normal by inversion of next_uniform().
  double next_normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
};

/// N i.i.d. standard normal variates. Throws std::domain_error for n == 0.
std::vector<double> gaussian_vector(std::size_t n, RngStream& rng);

struct SphereSample {
  std::vector<double> coords;  ///< X = Z / |Z|
  double lambda;               ///< sqrt(N) / |Z|
  double gaussian_norm;        ///< |Z|
};

/// Uniform point on S^{N-1} via Gaussian normalization; retries on |Z| = 0.
SphereSample sphere_sample(std::size_t n, RngStream& rng);

/// Euclidean norm with Neumaier-compensated accumulation of the squares.
double euclidean_norm(std::span<const double> v);

/// sqrt(N) / |Z|. Throws std::domain_error for a zero vector.
double lambda_of(std::span<const double> z);

}  // namespace spherecdf
