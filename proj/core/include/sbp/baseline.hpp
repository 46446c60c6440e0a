#pragma once

#include "sbp/solver.hpp"

namespace sbp {

/// Diminishing-regularization projected-gradient baseline for instances
/// whose upper objective is smooth:
///   x_{k+1} = P_C(x_k - t_k (grad g(x_k) + sigma_k grad f(x_k)))
/// with sigma_k = reg_base^-k and t_k chosen by backtracking on
/// g + sigma_k f. A reconstruction of the classic explicit-descent scheme
/// used for comparison runs; its accuracy targets are qualitative.
struct BaselineConfig {
  double step = 1.0;     ///< initial trial step for the backtracking search
  double reg_base = 1.1; ///< sigma_k = reg_base^-k, k >= 0
  /// stop once ||x_{k+1} - x_k|| <= eps and sigma_k <= eps; the second
  /// condition keeps the run going while the iterate sits at the
  /// constrained minimizer of g + sigma f for a still-large sigma
  double eps = 1e-5;
  int max_iter = 100000;
};

/// Runs the baseline; throws NotSmooth if f lacks a gradient. The result
/// trace reuses IterationRecord with tau_k = 0 and the regularization
/// weight stored in eta_k.
SolveResult solve_baseline(const ProblemInstance& problem, const BaselineConfig& config);

}  // namespace sbp
