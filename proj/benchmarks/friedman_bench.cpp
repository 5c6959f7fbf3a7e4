// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "friedman/chisq.hpp"
#include "friedman/enumeration.hpp"
#include "friedman/montecarlo.hpp"
#include "friedman/rng.hpp"
#include "friedman/stein.hpp"

namespace {

using namespace friedman;

void BM_ExactLaw(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(exact_statistic_law(r, n, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(configuration_count(r, n)));
}
BENCHMARK(BM_ExactLaw)->Args({3, 6})->Args({4, 4})->Args({2, 16})->Unit(benchmark::kMillisecond);

void BM_Philox(benchmark::State& state) {
  Philox4x32 rng({.seed = 1, .stream = 0});
  for (auto _ : state) benchmark::DoNotOptimize(rng());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Philox);

void BM_UniformBelow(benchmark::State& state) {
  Philox4x32 rng({.seed = 1, .stream = 0});
  for (auto _ : state) benchmark::DoNotOptimize(rng.uniform_below(7));
}
BENCHMARK(BM_UniformBelow);

void BM_ChisqCdf(benchmark::State& state) {
  const auto law = chisq_law(static_cast<int>(state.range(0)));
  double z = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chisq_cdf(law, z));
    z = z < 60.0 ? z * 1.1 : 0.1;
  }
}
BENCHMARK(BM_ChisqCdf)->Arg(1)->Arg(4)->Arg(30);

void BM_SteinFprime(benchmark::State& state) {
  const SteinSolution sol(static_cast<int>(state.range(0)), cosine(1.0));
  double x = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sol.fprime(x));
    x = x < 40.0 ? x * 1.3 : 0.05;
  }
}
BENCHMARK(BM_SteinFprime)->Arg(2)->Arg(9);

void BM_SimulateSumOfSquares(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  constexpr std::uint64_t kSamples = 100'000;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_sum_of_squares(n, 5, kSamples, 42, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kSamples));
}
BENCHMARK(BM_SimulateSumOfSquares)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
