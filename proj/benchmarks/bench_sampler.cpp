#include <benchmark/benchmark.h>

#include <random>

#include "nrsampler/kernels.hpp"
#include "nrsampler/projection.hpp"
#include "nrsampler/sampler.hpp"
#include "nrsampler/torus_problems.hpp"

namespace {

nrs::Matrix a_choice(int index) {
  return index == 0 ? nrs::Matrix(nrs::Matrix::Zero(3, 3)) : nrs::abar_matrix();
}

void BM_ComputeKernel(benchmark::State& state) {
  const nrs::TorusProblem problem = nrs::make_test2();
  const nrs::DynamicsSpec spec = problem.dynamics(nrs::abar_matrix());
  const nrs::Vector x = problem.surface.embed(0.4, 1.3);
  for (auto _ : state) benchmark::DoNotOptimize(nrs::compute_kernel(problem.surface, spec, x));
}
BENCHMARK(BM_ComputeKernel);

void BM_Project(benchmark::State& state) {
  const nrs::TorusProblem problem = nrs::make_test2();
  const nrs::DynamicsSpec spec = problem.dynamics(a_choice(static_cast<int>(state.range(0))));
  const nrs::ProjectionConfig cfg;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal(0.0, 0.05);
  std::vector<nrs::Vector> starts;
  for (int i = 0; i < 256; ++i) {
    nrs::Vector x = problem.surface.embed(0.1 * i, 0.37 * i);
    for (int j = 0; j < 3; ++j) x(j) += normal(rng);
    starts.push_back(x);
  }
  std::size_t i = 0;
  std::int64_t rk_steps = 0;
  for (auto _ : state) {
    const nrs::ProjectionResult r = nrs::project(problem.surface, spec, cfg, starts[i]);
    rk_steps += r.rk_steps;
    benchmark::DoNotOptimize(r.point);
    i = (i + 1) % starts.size();
  }
  state.counters["rk_steps"] =
      benchmark::Counter(static_cast<double>(rk_steps), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_Project)->Arg(0)->Arg(1);

void BM_SamplerStep(benchmark::State& state) {
  const nrs::TorusProblem problem = nrs::make_test2();
  const nrs::DynamicsSpec spec = problem.dynamics(a_choice(static_cast<int>(state.range(0))));
  const nrs::ProjectionConfig cfg;
  nrs::RandomStream rng(7);
  nrs::Vector x = nrs::default_initial_state(problem.surface, spec, cfg);
  for (auto _ : state) {
    x = nrs::step(problem.surface, spec, cfg, x, 2e-2, nrs::NoiseKind::gaussian, rng).point;
    benchmark::DoNotOptimize(x);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SamplerStep)->Arg(0)->Arg(1);

void BM_ReferenceQuadrature(benchmark::State& state) {
  const nrs::TorusProblem problem = nrs::make_test2();
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(problem.reference_value(grid));
}
BENCHMARK(BM_ReferenceQuadrature)->Arg(256)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
