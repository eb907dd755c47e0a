#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spherecdf/deformation.hpp"

namespace spherecdf {

inline constexpr std::int64_t kMinWilsonTrials = 100;
inline constexpr double kDefaultConfidence = 0.95;
/// Absolute slack allowed between the Wilson upper edge and a non-vacuous bound.
inline constexpr double kWilsonSlack = 0.01;

/// Wilson score interval for count successes out of trials.
std::pair<double, double> wilson_interval(std::int64_t count, std::int64_t trials,
                                          double confidence = kDefaultConfidence);

struct MonteCarloReport {
  std::int64_t event_count = 0;
  std::int64_t trials = 0;
  double frequency = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  double bound = 0.0;
  /// frequency <= bound, and wilson_high <= bound + kWilsonSlack when bound < 1.
  bool dominated = false;
};

MonteCarloReport make_report(std::int64_t event_count, std::int64_t trials, double bound,
                             double confidence = kDefaultConfidence);

struct RunOptions {
  double confidence = kDefaultConfidence;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct TrialConfig {
  std::int64_t n = 1;
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
  double epsilon = 0.05;
  DeformationParam t{0.1};
};

/// KS statistic d_KS(F_{sqrt(N) X}, Phi) of the sphere point drawn for one
/// trial; a pure function of (n, seed, trial).
double sphere_trial_ks(std::int64_t n, std::uint64_t seed, std::int64_t trial);
/// KS statistic d_KS(F_Z, Phi) of the i.i.d. Gaussian vector of one trial.
double gaussian_trial_ks(std::int64_t n, std::uint64_t seed, std::int64_t trial);
/// lambda = sqrt(N) / |Z| for one trial.
double trial_lambda(std::int64_t n, std::uint64_t seed, std::int64_t trial);
/// |Z|^2 for one trial.
double trial_chisq(std::int64_t n, std::uint64_t seed, std::int64_t trial);

/// Per-trial sphere KS statistics for trials 0..trials-1.
std::vector<double> sphere_ks_statistics(std::int64_t n, std::int64_t trials, std::uint64_t seed,
                                         unsigned threads = 0);

/// Frequency of d_KS(F_{sqrt(N) X}, Phi) > eps + gamma(t) against the full tail bound.
MonteCarloReport run_theorem_trials(const TrialConfig& config, const RunOptions& options = {});

/// Frequency of d_KS(F_Z, Phi) > eps for i.i.d. Gaussian Z against 2 e^{-2 N eps^2}.
MonteCarloReport run_dkw_trials(std::int64_t n, std::int64_t trials, std::uint64_t seed,
                                double epsilon, const RunOptions& options = {});

struct LambdaTrialReport {
  MonteCarloReport two_sided;  ///< |1 - lambda| > t
  MonteCarloReport above;      ///< lambda > 1 + t, bound e^{-N g+^2}
  MonteCarloReport below;      ///< lambda < 1 - t, bound e^{-N g-^2}
};

LambdaTrialReport run_lambda_trials(std::int64_t n, std::int64_t trials, std::uint64_t seed,
                                    DeformationParam t, const RunOptions& options = {});

struct ChiSquareTrialReport {
  MonteCarloReport upper;  ///< U - N >= 2 sqrt(N x) + 2 x
  MonteCarloReport lower;  ///< N - U >= 2 sqrt(N x)
  double upper_y = 0.0;    ///< N + 2 sqrt(N x) + 2 x
  double lower_y = 0.0;    ///< N - 2 sqrt(N x)
  std::int64_t upper_y_count = 0;  ///< #{U >= upper_y}
  std::int64_t lower_y_count = 0;  ///< #{U <= lower_y}
};

ChiSquareTrialReport run_chisq_trials(std::int64_t n, std::int64_t trials, std::uint64_t seed,
                                      double x, const RunOptions& options = {});

}  // namespace spherecdf
