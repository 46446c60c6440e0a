#include "sbp/solver.hpp"

#include <chrono>
#include <cmath>

namespace sbp {

double eta(const EtaSchedule& schedule, int k) {
  if (k < 1) throw InvalidConfig("eta index must be >= 1");
  // base^k by squaring; overflow saturates to inf and eta underflows to 0,
  // which downstream treats as a vanishing slack.
  double pow = 1.0, base = schedule.base;
  int e = k;
  while (e > 0) {
    if (e & 1) pow *= base;
    base *= base;
    e >>= 1;
    if (!std::isfinite(pow)) break;
  }
  return std::isfinite(pow) ? 1.0 / pow : 0.0;
}

bool should_stop(StoppingCriterion criterion, double alpha_next, double alpha_prev,
                 std::optional<double> known_alpha, double f_next, double f_prev,
                 double eps) {
  if (criterion == StoppingCriterion::A) {
    if (!known_alpha) throw MissingKnownAlpha();
    return std::abs(alpha_next - *known_alpha) <= eps &&
           std::abs(f_next - f_prev) <= eps;
  }
  return std::abs(alpha_next - alpha_prev) <= eps && std::abs(f_next - f_prev) <= eps;
}

void validate(const ProblemInstance& p) {
  if (p.f.dimension() != p.g.dimension())
    throw ValidationError("f", "dimension differs from g");
  if (p.f.dimension() != p.C.dimension())
    throw ValidationError("C", "dimension differs from objectives");
}

void validate(const ProblemInstance& p, const SolverConfig& c) {
  validate(p);
  if (c.sigma <= 0.0 || c.sigma >= 1.0) throw InvalidConfig("sigma must lie in (0,1)");
  if (c.eta_schedule.base <= 1.0) throw InvalidConfig("eta base must exceed 1");
  if (c.threshold_eps <= 0.0) throw InvalidConfig("threshold must be positive");
  if (c.max_outer < 1) throw InvalidConfig("max_outer must be positive");
  if (c.criterion == StoppingCriterion::A && !p.known_lower_optimum)
    throw InvalidConfig("criterion A requires the known lower-level optimum");
  if (c.x0 && c.x0->size() != p.C.dimension())
    throw DimensionMismatch(p.C.dimension(), c.x0->size());
}

SolveResult solve(const ProblemInstance& problem, const SolverConfig& config) {
  validate(problem, config);
  const auto t_start = std::chrono::steady_clock::now();

  SolveResult out;
  auto finish = [&](Termination term) {
    out.termination = term;
    out.wall_time_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    out.outer_iterations = static_cast<int>(out.trace.size());
    return out;
  };

  LowerStepOptions lopts;
  lopts.beta = config.beta;
  lopts.beta_min = config.beta_min;
  lopts.beta_max = config.beta_max;
  lopts.sigma = config.sigma;
  lopts.max_backtracks = config.max_backtracks;
  lopts.dykstra.tol = config.tol_proj;

  DykstraOptions proj_opts;
  proj_opts.tol = config.tol_proj;

  try {
    Vector x = config.x0 ? *config.x0 : Vector::Zero(problem.C.dimension());
    if (!problem.C.contains(x, std::max(config.feas_tol, 1e-8)))
      x = problem.C.project(x, proj_opts);

    double prev_alpha = 0.0, prev_f = 0.0;
    bool have_prev = false;

    for (int k = 1; k <= config.max_outer; ++k) {
      LowerStepResult lower = lower_level_step(problem.g, problem.C, x, lopts);
      const double fx = problem.f.value(x);

      if (have_prev && should_stop(config.criterion, lower.alpha_k, prev_alpha,
                                   problem.known_lower_optimum, fx, prev_f,
                                   config.threshold_eps)) {
        out.x_star = x;
        out.f_star = fx;
        out.g_star = problem.g.value(x);
        out.alpha_final = lower.alpha_k;
        return finish(Termination::CriterionMet);
      }

      const double eta_k = eta(config.eta_schedule, k);
      const double tau_k = lower.alpha_k + eta_k;

      InnerProblem inner{problem.f,      problem.g,           problem.C,
                         tau_k,          config.inner_epsilon, config.inner_budget,
                         config.feas_tol};
      InnerResult ir = solve_inner(inner, lower.stationary ? x : lower.y_k);
      if (!ir.best_feasible_found) throw NeverFeasible();

      IterationRecord rec;
      rec.k = k;
      rec.x_k = x;
      rec.lower = lower;
      rec.tau_k = tau_k;
      rec.inner = InnerStats{ir.iterations, ir.f_val, ir.g_val};
      rec.eta_k = eta_k;
      out.trace.push_back(std::move(rec));

      prev_alpha = lower.alpha_k;
      prev_f = fx;
      have_prev = true;
      x = std::move(ir.x_next);
    }

    LowerStepResult last = lower_level_step(problem.g, problem.C, x, lopts);
    out.x_star = x;
    out.f_star = problem.f.value(x);
    out.g_star = problem.g.value(x);
    out.alpha_final = last.alpha_k;
    return finish(Termination::MaxOuter);
  } catch (const Error& e) {
    out.error = e.what();
    return finish(Termination::Error);
  }
}

}  // namespace sbp
