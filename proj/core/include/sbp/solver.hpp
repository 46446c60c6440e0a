#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sbp/inner_solver.hpp"
#include "sbp/lower_step.hpp"

namespace sbp {

/// Minimize f over the solution set of min_C g. The lower-level objective
/// should be smooth; a nonsmooth g with a deterministic subgradient is
/// accepted (the relaxation step then uses the subgradient), which some of
/// the bundled experiments rely on.
struct ProblemInstance {
  FunctionOracle f;
  FunctionOracle g;
  FeasibleSet C;
  std::optional<double> known_lower_optimum;
  std::string name;
};

void validate(const ProblemInstance& p);

enum class StoppingCriterion { A, B };

/// eta_k = base^-k for k >= 1; summable for base > 1.
struct EtaSchedule {
  double base = 100.0;
};

double eta(const EtaSchedule& schedule, int k);

struct SolverConfig {
  double sigma = 0.1;
  double beta = 1.0;
  double beta_min = 1e-4;
  double beta_max = 1e4;
  int max_backtracks = 60;
  EtaSchedule eta_schedule{};
  double threshold_eps = 1e-5;
  StoppingCriterion criterion = StoppingCriterion::B;
  int max_outer = 10000;
  long inner_budget = 50000;
  double inner_epsilon = 1e-8;
  double feas_tol = 1e-9;
  double tol_proj = 1e-10;
  std::optional<Vector> x0;  ///< nullopt = project the origin onto C
};

void validate(const ProblemInstance& p, const SolverConfig& c);

/// Stopping rule. Criterion A compares the current relaxation level with
/// the known lower optimum, criterion B with the previous level; both also
/// require the upper objective to have settled:
///   A: |alpha_next - alpha| <= eps  and  |f_next - f_prev| <= eps
///   B: |alpha_next - alpha_prev| <= eps  and  |f_next - f_prev| <= eps
bool should_stop(StoppingCriterion criterion, double alpha_next, double alpha_prev,
                 std::optional<double> known_alpha, double f_next, double f_prev,
                 double eps);

enum class Termination { CriterionMet, MaxOuter, Error };

struct InnerStats {
  long iterations = 0;
  double f_val = 0.0;
  double g_val = 0.0;
};

struct IterationRecord {
  int k = 0;
  Vector x_k;
  LowerStepResult lower;
  double tau_k = 0.0;
  InnerStats inner;
  double eta_k = 0.0;
};

struct SolveResult {
  Vector x_star;
  double f_star = 0.0;
  double g_star = 0.0;
  double alpha_final = 0.0;
  int outer_iterations = 0;
  double wall_time_sec = 0.0;
  std::vector<IterationRecord> trace;
  Termination termination = Termination::Error;
  std::string error;  ///< set when termination == Error
};

/// The outer loop: relax the lower-level value with a summable slack,
/// take one projected-gradient descent step on g to refresh the level,
/// solve the relaxed subproblem, repeat until the selected criterion fires
/// or max_outer is hit. Solver errors are captured in the result rather
/// than thrown; config errors throw InvalidConfig.
SolveResult solve(const ProblemInstance& problem, const SolverConfig& config);

}  // namespace sbp
