#include <benchmark/benchmark.h>

#include "bonus/asymptotic.hpp"
#include "bonus/beta_core.hpp"
#include "bonus/oracle.hpp"
#include "bonus/simulate.hpp"
#include "bonus/solver.hpp"

namespace {

using namespace bonus;

void BM_GammaTablesBuild(benchmark::State& state) {
  const PriorParams prior(2.5, 1.5);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    GammaTables tables(prior, n);
    benchmark::DoNotOptimize(tables.log_falling_ab(n));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_GammaTablesBuild)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oN);

void BM_StateProbQuery(benchmark::State& state) {
  const PriorParams prior(2.5, 1.5);
  const GammaTables tables(prior, 4096);
  int j = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(state_prob(tables, 4096, j));
    j = (j + 1) & 4095;
  }
}
BENCHMARK(BM_StateProbQuery);

void BM_OracleSurprise(benchmark::State& state) {
  const PriorParams prior(2, 1);
  const int n = static_cast<int>(state.range(0));
  const GammaTables tables(prior, n - 1);
  const MatchConfig cfg(n, min_bonus(n) + 2 <= n ? min_bonus(n) + 2 : min_bonus(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(expected_surprise_exact(prior, tables, cfg).total);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_OracleSurprise)->Range(64, 2000)->Complexity(benchmark::oNSquared);

void BM_BruteForceOptimal(benchmark::State& state) {
  const PriorParams prior(2, 1);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_optimal(prior, n).x_star);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_BruteForceOptimal)->Range(8, 256)->Complexity();

void BM_LinearScanOptimal(benchmark::State& state) {
  const PriorParams prior(2, 1);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(linear_scan_optimal(prior, n).x_star);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_LinearScanOptimal)->Range(8, 1 << 20)->Complexity(benchmark::oN);

void BM_AsymptoticOptimal(benchmark::State& state) {
  const PriorParams prior(3, 1);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(asymptotic_optimal(prior, n).mu_star);
  }
}
BENCHMARK(BM_AsymptoticOptimal)->Range(1 << 10, 1 << 20);

void BM_SimulateTrials(benchmark::State& state) {
  const PriorParams prior(2, 1);
  const MatchConfig cfg(10, 2);
  const long long trials = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(prior, cfg, trials, 7).mean_surprise);
  }
  state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_SimulateTrials)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
