#include <benchmark/benchmark.h>

#include "sbp/experiments.hpp"
#include "sbp/inner_solver.hpp"
#include "sbp/lower_step.hpp"

namespace {

using sbp::Vector;

void BM_LowerStepDisc(benchmark::State& state) {
  sbp::ProblemInstance p = sbp::make_ex51();
  Vector x(2);
  x << -1.0, -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sbp::lower_level_step(p.g, p.C, x));
  }
}
BENCHMARK(BM_LowerStepDisc);

void BM_LowerStepPortfolio(benchmark::State& state) {
  sbp::ProblemInstance p = sbp::make_ex54(Vector::Constant(8, 0.125));
  Vector x = Vector::Constant(8, 0.125);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sbp::lower_level_step(p.g, p.C, x));
  }
}
BENCHMARK(BM_LowerStepPortfolio);

void BM_InnerLinearOverDiscBox(benchmark::State& state) {
  sbp::ProblemInstance p = sbp::make_ex51();
  sbp::InnerProblem ip{p.f, p.g, p.C, 1e-4, 1e-8, 50000, 1e-9};
  Vector warm = p.C.project(Vector::Zero(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sbp::solve_inner(ip, warm));
  }
}
BENCHMARK(BM_InnerLinearOverDiscBox);

void BM_InnerL1LeastSquares(benchmark::State& state) {
  sbp::ProblemInstance p = sbp::make_ex52a();
  sbp::InnerProblem ip{p.f, p.g, p.C, 1e-6, 1e-8, 50000, 1e-9};
  Vector warm = Vector::Zero(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sbp::solve_inner(ip, warm));
  }
}
BENCHMARK(BM_InnerL1LeastSquares);

void BM_SolveEx51(benchmark::State& state) {
  sbp::ProblemInstance p = sbp::make_ex51();
  sbp::SolverConfig cfg;
  cfg.threshold_eps = 1e-5;
  cfg.eta_schedule.base = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sbp::solve(p, cfg));
  }
}
BENCHMARK(BM_SolveEx51);

void BM_SolveEx53(benchmark::State& state) {
  Vector a(2);
  a << 2.0, 3.0;
  sbp::ProblemInstance p = sbp::make_ex53(a);
  sbp::SolverConfig cfg = sbp::experiment_config(sbp::ExperimentId::Ex53);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sbp::solve(p, cfg));
  }
}
BENCHMARK(BM_SolveEx53);

}  // namespace

BENCHMARK_MAIN();
