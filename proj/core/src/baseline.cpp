#include "sbp/baseline.hpp"

#include <chrono>
#include <cmath>

namespace sbp {

SolveResult solve_baseline(const ProblemInstance& problem, const BaselineConfig& config) {
  validate(problem);
  if (!problem.f.smooth()) throw NotSmooth();
  if (config.reg_base <= 1.0) throw InvalidConfig("reg base must exceed 1");
  if (config.step <= 0.0) throw InvalidConfig("step must be positive");

  const auto t_start = std::chrono::steady_clock::now();
  SolveResult out;

  Vector x = problem.C.project(Vector::Zero(problem.C.dimension()));
  double sigma = 1.0;  // reg_base^0
  double step = config.step;

  for (int k = 0; k < config.max_iter; ++k) {
    // first_order falls back to the deterministic subgradient for the
    // nonsmooth lower-level objectives the solver accepts
    Vector grad = problem.g.first_order(x) + sigma * problem.f.gradient(x);
    double h = problem.g.value(x) + sigma * problem.f.value(x);
    Vector xn;
    double move2 = 0.0;
    for (int bt = 0; bt < 60; ++bt) {
      xn = problem.C.project(x - step * grad);
      move2 = (xn - x).squaredNorm();
      double hn = problem.g.value(xn) + sigma * problem.f.value(xn);
      if (hn <= h - 1e-4 * move2 / step || move2 == 0.0) break;
      step *= 0.5;
    }

    IterationRecord rec;
    rec.k = k + 1;
    rec.x_k = x;
    rec.lower = LowerStepResult{xn, false, step, 0, xn, problem.g.value(x),
                                grad.dot(xn - x)};
    rec.tau_k = 0.0;
    rec.inner = InnerStats{};
    rec.eta_k = sigma;
    out.trace.push_back(std::move(rec));

    double move = std::sqrt(move2);
    x = std::move(xn);
    step = std::min(step * 1.5, 1e6);
    sigma /= config.reg_base;
    // the iterate can sit at the constrained minimizer of g + sigma f while
    // sigma is still large, so a small move alone must not stop the run
    if (move <= config.eps && sigma <= config.eps) break;
  }

  out.x_star = x;
  out.f_star = problem.f.value(x);
  out.g_star = problem.g.value(x);
  out.alpha_final = out.g_star;
  out.outer_iterations = static_cast<int>(out.trace.size());
  out.termination = out.outer_iterations < config.max_iter ? Termination::CriterionMet
                                                           : Termination::MaxOuter;
  out.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return out;
}

}  // namespace sbp
