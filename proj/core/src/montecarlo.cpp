#include "spherecdf/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "spherecdf/empirical.hpp"
#include "spherecdf/normal.hpp"
#include "spherecdf/sampling.hpp"
#include "spherecdf/tail_bounds.hpp"

namespace spherecdf {

std::pair<double, double> wilson_interval(std::int64_t count, std::int64_t trials,
                                          double confidence) {
  if (trials < 1 || count < 0 || count > trials) {
    throw std::domain_error("wilson_interval: need 0 <= count <= trials and trials >= 1");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::domain_error("wilson_interval: confidence must lie in (0, 1)");
  }
  const double z = std_normal_quantile(0.5 + 0.5 * confidence);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(count) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  double low = count == 0 ? 0.0 : std::max(0.0, center - half);
  double high = count == trials ? 1.0 : std::min(1.0, center + half);
  low = std::min(low, p);
  high = std::max(high, p);
  return {low, high};
}

MonteCarloReport make_report(std::int64_t event_count, std::int64_t trials, double bound,
                             double confidence) {
  if (trials < kMinWilsonTrials) {
    throw std::domain_error("Monte Carlo verdicts need at least 100 trials");
  }
  MonteCarloReport r;
  r.event_count = event_count;
  r.trials = trials;
  r.frequency = static_cast<double>(event_count) / static_cast<double>(trials);
  std::tie(r.wilson_low, r.wilson_high) = wilson_interval(event_count, trials, confidence);
  r.bound = bound;
  r.dominated = r.frequency <= bound && (bound >= 1.0 || r.wilson_high <= bound + kWilsonSlack);
  return r;
}

namespace {

void require_trial_shape(std::int64_t n, std::int64_t trials) {
  if (n < 1) throw std::domain_error("Monte Carlo: N must be positive");
  if (trials < kMinWilsonTrials) {
    throw std::domain_error("Monte Carlo: trials must be at least 100");
  }
}

unsigned worker_count(unsigned requested, std::int64_t trials) {
  unsigned w = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::int64_t>(w, trials));
}

// Runs body(trial) for every trial index, splitting the index range into
// contiguous chunks. Each result slot is written by exactly one worker.
template <typename T, typename Body>
std::vector<T> map_trials(std::int64_t trials, unsigned threads, Body body) {
  std::vector<T> out(static_cast<std::size_t>(trials));
  const unsigned workers = worker_count(threads, trials);
  auto run_range = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) out[static_cast<std::size_t>(i)] = body(i);
  };
  if (workers <= 1) {
    run_range(0, trials);
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::int64_t chunk = (trials + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::int64_t begin = std::min<std::int64_t>(trials, chunk * w);
    const std::int64_t end = std::min<std::int64_t>(trials, begin + chunk);
    pool.emplace_back(run_range, begin, end);
  }
  return out;
}

}  // namespace

double sphere_trial_ks(std::int64_t n, std::uint64_t seed, std::int64_t trial) {
  RngStream rng(seed, static_cast<std::uint64_t>(trial));
  SphereSample s = sphere_sample(static_cast<std::size_t>(n), rng);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (double& v : s.coords) v *= root_n;
  return ks_to_normal(build_ecdf(s.coords)).statistic;
}

double gaussian_trial_ks(std::int64_t n, std::uint64_t seed, std::int64_t trial) {
  RngStream rng(seed, static_cast<std::uint64_t>(trial));
  const std::vector<double> z = gaussian_vector(static_cast<std::size_t>(n), rng);
  return ks_to_normal(build_ecdf(z)).statistic;
}

double trial_lambda(std::int64_t n, std::uint64_t seed, std::int64_t trial) {
  RngStream rng(seed, static_cast<std::uint64_t>(trial));
  return lambda_of(gaussian_vector(static_cast<std::size_t>(n), rng));
}

double trial_chisq(std::int64_t n, std::uint64_t seed, std::int64_t trial) {
  RngStream rng(seed, static_cast<std::uint64_t>(trial));
  const double norm = euclidean_norm(gaussian_vector(static_cast<std::size_t>(n), rng));
  return norm * norm;
}

std::vector<double> sphere_ks_statistics(std::int64_t n, std::int64_t trials, std::uint64_t seed,
                                         unsigned threads) {
  if (n < 1 || trials < 1) throw std::domain_error("sphere_ks_statistics: N and trials must be positive");
  return map_trials<double>(trials, threads,
                            [=](std::int64_t i) { return sphere_trial_ks(n, seed, i); });
}

MonteCarloReport run_theorem_trials(const TrialConfig& config, const RunOptions& options) {
  require_trial_shape(config.n, config.trials);
  const BoundBreakdown bound =
      theorem_bound(BoundInputs(config.n, config.epsilon, config.t));
  const std::vector<double> ks =
      sphere_ks_statistics(config.n, config.trials, config.seed, options.threads);
  const auto events = std::count_if(ks.begin(), ks.end(),
                                    [&](double d) { return d > bound.threshold; });
  return make_report(events, config.trials, bound.total, options.confidence);
}

MonteCarloReport run_dkw_trials(std::int64_t n, std::int64_t trials, std::uint64_t seed,
                                double epsilon, const RunOptions& options) {
  require_trial_shape(n, trials);
  const double bound = dkw_bound(n, epsilon);
  const std::vector<double> ks = map_trials<double>(
      trials, options.threads, [=](std::int64_t i) { return gaussian_trial_ks(n, seed, i); });
  const auto events = std::count_if(ks.begin(), ks.end(), [&](double d) { return d > epsilon; });
  return make_report(events, trials, bound, options.confidence);
}

LambdaTrialReport run_lambda_trials(std::int64_t n, std::int64_t trials, std::uint64_t seed,
                                    DeformationParam t, const RunOptions& options) {
  require_trial_shape(n, trials);
  const double tv = t.value();
  const std::vector<double> lambdas = map_trials<double>(
      trials, options.threads, [=](std::int64_t i) { return trial_lambda(n, seed, i); });

  std::int64_t above = 0;
  std::int64_t below = 0;
  std::int64_t two_sided = 0;
  for (const double l : lambdas) {
    above += l > 1.0 + tv;
    below += l < 1.0 - tv;
    two_sided += std::abs(1.0 - l) > tv;
  }
  // The one-sided events are disjoint and cover the two-sided one.
  if (above + below != two_sided) {
    throw std::logic_error("run_lambda_trials: one-sided counts do not partition the event");
  }
  const double nd = static_cast<double>(n);
  const double gp = g_plus(tv);
  const double gm = g_minus(tv);
  LambdaTrialReport r;
  r.two_sided = make_report(two_sided, trials, lambda_concentration_bound(n, tv), options.confidence);
  r.above = make_report(above, trials, std::exp(-nd * gp * gp), options.confidence);
  r.below = make_report(below, trials, std::exp(-nd * gm * gm), options.confidence);
  return r;
}

ChiSquareTrialReport run_chisq_trials(std::int64_t n, std::int64_t trials, std::uint64_t seed,
                                      double x, const RunOptions& options) {
  require_trial_shape(n, trials);
  const LaurentMassartBound up = lm_upper(n, x);
  const LaurentMassartBound lo = lm_lower(n, x);
  const double nd = static_cast<double>(n);
  const std::vector<double> u = map_trials<double>(
      trials, options.threads, [=](std::int64_t i) { return trial_chisq(n, seed, i); });

  ChiSquareTrialReport r;
  r.upper_y = nd + up.threshold;
  r.lower_y = nd - lo.threshold;
  std::int64_t upper = 0;
  std::int64_t lower = 0;
  for (const double v : u) {
    upper += v - nd >= up.threshold;
    lower += nd - v >= lo.threshold;
    r.upper_y_count += v >= r.upper_y;
    r.lower_y_count += v <= r.lower_y;
  }
  r.upper = make_report(upper, trials, up.bound, options.confidence);
  r.lower = make_report(lower, trials, lo.bound, options.confidence);
  return r;
}

}  // namespace spherecdf
