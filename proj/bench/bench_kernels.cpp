#include <vector>

#include <benchmark/benchmark.h>

#include "delayspec/kernels.hpp"

namespace {

using namespace delayspec;

ProblemSpec delayed_problem() {
  return ProblemSpec::from_strings("sin(x)", "cos(x)", "0.5*x*(pi/2 - x)", "0.25*(x - pi/2)*(pi - x)",
                                   kInterface * 2.0 / 3.0, kInterface / 2.0, 2.0);
}

std::vector<double> grid(int samples) {
  std::vector<double> s(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) s[static_cast<std::size_t>(i)] = 1.0 + 20.0 * i / (samples - 1);
  return s;
}

void BM_sample_serial(benchmark::State& state) {
  const Shooter shooter(delayed_problem(), static_cast<int>(state.range(0)));
  const auto s = grid(64);
  for (auto _ : state) benchmark::DoNotOptimize(serial::sample_characteristic(shooter, s));
}

void BM_sample_parallel(benchmark::State& state) {
  const Shooter shooter(delayed_problem(), static_cast<int>(state.range(0)));
  const auto s = grid(64);
  for (auto _ : state) benchmark::DoNotOptimize(parallel::sample_characteristic(shooter, s));
  state.counters["threads"] = available_threads();
}

void BM_localize_serial(benchmark::State& state) {
  const Shooter shooter(delayed_problem(), 1024);
  for (auto _ : state) benchmark::DoNotOptimize(serial::localize_range(shooter, 5, 5 + static_cast<int>(state.range(0))));
}

void BM_localize_parallel(benchmark::State& state) {
  const Shooter shooter(delayed_problem(), 1024);
  for (auto _ : state) benchmark::DoNotOptimize(parallel::localize_range(shooter, 5, 5 + static_cast<int>(state.range(0))));
  state.counters["threads"] = available_threads();
}

}  // namespace

BENCHMARK(BM_sample_serial)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample_parallel)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_localize_serial)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_localize_parallel)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
