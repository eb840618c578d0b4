#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "spbvp/analysis.hpp"
#include "spbvp/quadrature.hpp"
#include "spbvp/solver.hpp"

namespace {

const spbvp::Interval kUnit{0.0, 1.0};

void BM_OscIntegral(benchmark::State& state) {
  const double omega = static_cast<double>(state.range(0));
  const auto g = [](double s) { return std::exp(s); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(spbvp::osc_integral(spbvp::Kernel::kSin, omega, 1.0, g, 0.0, 1.0));
  }
  state.counters["evals"] = static_cast<double>(spbvp::estimate_cost(omega, 0.0, 1.0));
}
BENCHMARK(BM_OscIntegral)->RangeMultiplier(10)->Range(10, 100'000);

void BM_SolveGrid(benchmark::State& state) {
  const spbvp::ProblemSpec p(0.0, 1.0, 1.0, spbvp::builtin::exponential(kUnit));
  const int n = static_cast<int>(state.range(0));
  const double eps = spbvp::sample_sequence(0.5, p.constants(), n, n)[0].eps;
  const spbvp::SolveContext ctx(p, eps);
  const std::vector<double> grid = spbvp::uniform_grid(0.0, 1.0, 101);
  for (auto _ : state) benchmark::DoNotOptimize(spbvp::solve_grid(p, ctx, grid));
}
BENCHMARK(BM_SolveGrid)->Arg(0)->Arg(12)->Arg(100);

void BM_FdOracle(benchmark::State& state) {
  const spbvp::ProblemSpec p(0.0, 1.0, 1.0, spbvp::SmoothFunction::parse("cos(2*pi*t)", kUnit));
  const int nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spbvp::fd_oracle(p, 0.01, nodes));
}
BENCHMARK(BM_FdOracle)->Arg(201)->Arg(2001)->Arg(20001);

void BM_RateFit(benchmark::State& state) {
  const spbvp::ProblemSpec p(0.0, 1.0, 1.0, spbvp::builtin::exponential(kUnit));
  for (auto _ : state) benchmark::DoNotOptimize(spbvp::rate_fit(p, 0.5, 2, 14, 101));
}
BENCHMARK(BM_RateFit);

}  // namespace
BENCHMARK_MAIN();
