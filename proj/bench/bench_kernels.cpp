// Serial reference vs OpenMP kernels. Each pair runs on identical inputs.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "moa/kernels.hpp"
#include "moa/nsga2.hpp"
#include "moa/problems.hpp"
#include "moa/rng.hpp"

namespace {

using namespace moa;

std::vector<double> random_points(std::size_t n, std::size_t dim, std::uint64_t seed) {
  CounterRng rng(seed, Stream::sampling);
  std::vector<double> v(n * dim);
  for (auto& x : v) x = rng.uniform();
  return v;
}

// Points on a concave curve, so most of them are mutually non-dominated.
std::vector<double> front_points(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, Stream::sampling);
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = rng.uniform() * 1.5707963267948966;
    v.push_back(std::cos(t));
    v.push_back(std::sin(t));
  }
  return v;
}

template <Exec E>
void BM_DominanceStructure(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto pts = random_points(n, 3, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::dominance_structure(PointsView{pts, 3}, E));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK_TEMPLATE(BM_DominanceStructure, Exec::serial)->Arg(200)->Arg(800);
BENCHMARK_TEMPLATE(BM_DominanceStructure, Exec::parallel)->Arg(200)->Arg(800);

void BM_MaxMinDistance(benchmark::State& state, bool parallel) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto q = front_points(n, 2);
  std::vector<std::vector<double>> raw{front_points(n, 3), front_points(n, 4), front_points(n, 5)};
  std::vector<PointsView> sets;
  for (const auto& r : raw) sets.push_back(PointsView{r, 2});
  for (auto _ : state) {
    auto d = parallel ? kernels::max_min_distance_parallel(PointsView{q, 2}, sets, {})
                      : kernels::max_min_distance_serial(PointsView{q, 2}, sets, {});
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK_CAPTURE(BM_MaxMinDistance, serial, false)->Arg(500)->Arg(2000);
BENCHMARK_CAPTURE(BM_MaxMinDistance, parallel, true)->Arg(500)->Arg(2000);

void BM_GridAttainment(benchmark::State& state, bool parallel) {
  std::vector<std::vector<double>> raw{front_points(100, 6), front_points(100, 7)};
  std::vector<PointsView> runs;
  for (const auto& r : raw) runs.push_back(PointsView{r, 2});
  const std::vector<double> lo{0.0, 0.0}, hi{1.0, 1.0};
  const auto cells = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto g = parallel ? kernels::grid_attainment_parallel(runs, lo, hi, cells)
                      : kernels::grid_attainment_serial(runs, lo, hi, cells);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK_CAPTURE(BM_GridAttainment, serial, false)->Arg(100)->Arg(300);
BENCHMARK_CAPTURE(BM_GridAttainment, parallel, true)->Arg(100)->Arg(300);

void BM_MonteCarloCount(benchmark::State& state, bool parallel) {
  const auto pts = random_points(100, 5, 8);
  const std::vector<double> lo(5, 0.0), hi(5, 1.0);
  const auto samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto c = parallel ? kernels::dominated_sample_count_parallel(PointsView{pts, 5}, lo, hi, samples, 9)
                      : kernels::dominated_sample_count_serial(PointsView{pts, 5}, lo, hi, samples, 9);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK_CAPTURE(BM_MonteCarloCount, serial, false)->Arg(100000);
BENCHMARK_CAPTURE(BM_MonteCarloCount, parallel, true)->Arg(100000);

// One short WTA optimization; population evaluation is the parallel part.
template <Exec E>
void BM_WtaRun(benchmark::State& state) {
  WtaModelSpec spec;
  spec.samples = 100;
  const WtaProblem problem(spec);
  AlgorithmConfig config;
  config.population_size = 40;
  config.generations = 5;
  config.evaluation = E;
  for (auto _ : state) benchmark::DoNotOptimize(run_nsga2(problem, config));
}
BENCHMARK_TEMPLATE(BM_WtaRun, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_WtaRun, Exec::parallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
