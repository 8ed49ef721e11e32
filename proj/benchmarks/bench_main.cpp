#include <benchmark/benchmark.h>

#include "hyperunif/imhof.hpp"
#include "hyperunif/kernel.hpp"
#include "hyperunif/mixture.hpp"
#include "hyperunif/sphere.hpp"
#include "hyperunif/statistic.hpp"
#include "hyperunif/uniformity_tests.hpp"

using namespace hyperunif;

namespace {

void BM_psi(benchmark::State& state) {
  const KernelEvaluator k(static_cast<int>(state.range(0)));
  double theta = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k.psi(theta));
    theta = theta < 3.0 ? theta + 0.01 : 0.1;
  }
}
BENCHMARK(BM_psi)->Arg(1)->Arg(2)->Arg(3)->Arg(5)->Arg(10);

void BM_cvm_statistic(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const KernelEvaluator k = make_cvm_kernel(q);
  const DirectionalSample s = sample_uniform(q, n, RngStream{1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(cvm_statistic(s, k));
  state.SetComplexityN(state.range(1));
}
BENCHMARK(BM_cvm_statistic)
    ->ArgsProduct({{1, 2, 3, 5}, {100, 400, 967}})
    ->Unit(benchmark::kMillisecond);

void BM_build_mixture(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const int K = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(build_mixture(q, K));
}
BENCHMARK(BM_build_mixture)
    ->ArgsProduct({{2, 5, 10}, {1000, 10000, 100000}})
    ->Unit(benchmark::kMillisecond);

void BM_imhof_tail(benchmark::State& state) {
  const ChiSqMixture m = build_mixture(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(imhof_tail(m, 0.3));
}
BENCHMARK(BM_imhof_tail)->ArgsProduct({{2, 10}, {1000, 10000}})->Unit(benchmark::kMillisecond);

void BM_critical_value(benchmark::State& state) {
  const ChiSqMixture m = build_mixture(static_cast<int>(state.range(0)), 10000);
  for (auto _ : state) benchmark::DoNotOptimize(critical_value(m, 0.05));
}
BENCHMARK(BM_critical_value)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
