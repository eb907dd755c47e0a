#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include <spherecdf/deformation.hpp>
#include <spherecdf/empirical.hpp>
#include <spherecdf/sampling.hpp>
#include <spherecdf/tail_bounds.hpp>

namespace {

void BM_GammaClosed(benchmark::State& state) {
  double t = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spherecdf::gamma_closed(spherecdf::DeformationParam(t)));
    t = t < 0.98 ? t + 0.01 : 0.01;
  }
}
BENCHMARK(BM_GammaClosed);

void BM_GammaOracle(benchmark::State& state) {
  const auto grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spherecdf::gamma_oracle(spherecdf::DeformationParam(0.3), grid));
  }
}
BENCHMARK(BM_GammaOracle)->Arg(1001)->Arg(20001)->Unit(benchmark::kMillisecond);

void BM_SphereSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  spherecdf::RngStream rng(0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(spherecdf::sphere_sample(n, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SphereSample)->RangeMultiplier(10)->Range(10, 100000);

void BM_KsToNormal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  spherecdf::RngStream rng(1, 0);
  const auto z = spherecdf::gaussian_vector(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spherecdf::ks_to_normal(spherecdf::build_ecdf(z)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KsToNormal)->RangeMultiplier(10)->Range(10, 100000)->Complexity(benchmark::oNLogN);

void BM_OptimizeSplit(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(spherecdf::optimize_split(state.range(0), 0.05));
  }
}
BENCHMARK(BM_OptimizeSplit)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
