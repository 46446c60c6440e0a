#include <benchmark/benchmark.h>

#include <random>

#include "sbp/experiments.hpp"
#include "sbp/feasible_set.hpp"

namespace {

using sbp::FeasibleSet;
using sbp::Vector;

Vector random_point(std::mt19937_64& rng, Eigen::Index n, double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

void BM_SimplexProjection(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  FeasibleSet simplex = FeasibleSet::simplex(n, 1.0);
  std::mt19937_64 rng(1);
  Vector p = random_point(rng, n, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simplex.project(p));
  }
}
BENCHMARK(BM_SimplexProjection)->Arg(8)->Arg(64)->Arg(512);

void BM_BallProjection(benchmark::State& state) {
  FeasibleSet ball = FeasibleSet::ball(Vector::Zero(16), 1.0);
  std::mt19937_64 rng(2);
  Vector p = random_point(rng, 16, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ball.project(p));
  }
}
BENCHMARK(BM_BallProjection);

void BM_DykstraDiscBox(benchmark::State& state) {
  sbp::ProblemInstance p51 = sbp::make_ex51();
  std::mt19937_64 rng(3);
  Vector p = random_point(rng, 2, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(p51.C.project(p));
  }
}
BENCHMARK(BM_DykstraDiscBox);

void BM_DykstraPortfolioSet(benchmark::State& state) {
  sbp::ProblemInstance mk = sbp::make_ex54(Vector::Constant(8, 0.125));
  std::mt19937_64 rng(4);
  Vector p = random_point(rng, 8, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mk.C.project(p));
  }
}
BENCHMARK(BM_DykstraPortfolioSet);

}  // namespace
