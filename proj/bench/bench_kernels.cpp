// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "quizreward/mechanism.hpp"
#include "quizreward/simulator.hpp"

namespace {

using namespace quizreward;

void BM_OptimalRatioSerial(benchmark::State& state) {
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_ratio_serial(parse_money("100"), parse_money("1"), step));
  }
}

void BM_OptimalRatioParallel(benchmark::State& state) {
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_ratio(parse_money("100"), parse_money("1"), step));
  }
}

BENCHMARK(BM_OptimalRatioSerial)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OptimalRatioParallel)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

Scenario trials_scenario(std::int64_t players) {
  return Scenario::baseline(QuizCase::Case3, players, 100, 2021);
}

void BM_RunTrialsSerial(benchmark::State& state) {
  const Scenario scenario = trials_scenario(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_trials_serial(scenario));
}

void BM_RunTrialsParallel(benchmark::State& state) {
  const Scenario scenario = trials_scenario(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_trials(scenario));
}

BENCHMARK(BM_RunTrialsSerial)->Arg(200)->Arg(20'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunTrialsParallel)->Arg(200)->Arg(20'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
