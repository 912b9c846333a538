// Serial reference vs OpenMP kernel for the two batched hot paths.
// Run with OMP_NUM_THREADS set to compare worker counts.

#include <benchmark/benchmark.h>

#include <cmath>

#include "ardfds/estimator.hpp"
#include "ardfds/nesterov.hpp"
#include "ardfds/sphere_moments.hpp"

using namespace ardfds;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(2) == 0 ? Execution::serial : Execution::parallel;
}

void BM_BatchSlope(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  NesterovProblem prob(n, 10.0, 0.1, 1e-6, 1);
  const Vector x(n, 0.5);
  SphereSampler sampler(n, 2);
  const Vector e = sampler.sample();
  OracleLedger ledger;
  std::uint64_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        batch_slope(prob, x, e, 1e-4, m, SeedStream{3, k++}, ledger, exec_of(state)));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * m));
}

void BM_SphereMoments(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto samples = static_cast<std::size_t>(state.range(1));
  const Vector s(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Seed seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sphere_moments(n, 2.0, samples, s, seed++, exec_of(state)));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * samples));
}

}  // namespace

BENCHMARK(BM_BatchSlope)
    ->ArgNames({"n", "m", "parallel"})
    ->ArgsProduct({{100, 1000}, {64, 1024}, {0, 1}})
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SphereMoments)
    ->ArgNames({"n", "samples", "parallel"})
    ->ArgsProduct({{100, 1000}, {16384}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
