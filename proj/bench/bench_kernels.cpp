// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "stiefel/parallel.hpp"

using namespace stiefel;

namespace {

Scenario sphere_scenario(double t_end) {
  Scenario s;
  s.n = 3;
  s.p = 1;
  s.t_end = t_end;
  return s;
}

void BM_TrialsSerial(benchmark::State& state) {
  const Scenario s = sphere_scenario(50.0);
  for (auto _ : state) benchmark::DoNotOptimize(parallel::run_trials_serial(s, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TrialsOpenMP(benchmark::State& state) {
  const Scenario s = sphere_scenario(50.0);
  for (auto _ : state) benchmark::DoNotOptimize(parallel::run_trials(s, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PairsSerial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(parallel::sample_f_max_serial(5, 2, state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PairsOpenMP(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parallel::sample_f_max(5, 2, state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Rk4StepH5(benchmark::State& state) {
  Rng rng(3);
  std::vector<StiefelPoint> agents;
  for (int i = 0; i < 5; ++i) agents.push_back(haar_sample(state.range(0), 1, rng));
  const Configuration c(agents);
  const WeightedGraph g = cycle_graph(5);
  for (auto _ : state) benchmark::DoNotOptimize(integrate(c, g, {}, {1.0, 0.01, 1000}));
  state.SetItemsProcessed(state.iterations() * 100);
}

}  // namespace

BENCHMARK(BM_TrialsSerial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsOpenMP)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairsSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairsOpenMP)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rk4StepH5)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
