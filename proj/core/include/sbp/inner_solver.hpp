#pragma once

#include "sbp/feasible_set.hpp"
#include "sbp/oracles.hpp"

namespace sbp {

/// The relaxed subproblem solved each outer iteration:
///   min f(x)  s.t.  g(x) <= tau,  x in C
/// where tau sits strictly above the lower-level minimum by construction
/// of the outer loop, so a Slater point exists.
struct InnerProblem {
  FunctionOracle f;
  FunctionOracle g;
  FeasibleSet C;
  double tau = 0.0;
  double epsilon = 1e-8;  ///< target suboptimality of the returned point
  long budget = 50000;    ///< max first-order iterations
  double feas_tol = 1e-9; ///< tolerance on the level constraint
};

struct InnerResult {
  Vector x_next;
  double f_val = 0.0;
  double g_val = 0.0;
  long iterations = 0;
  /// False only if no iterate ever satisfied the level constraint; x_next is
  /// then the iterate with least g, and the outer-loop contract was violated.
  bool best_feasible_found = false;
};

/// Computes an epsilon-minimizer of the relaxed subproblem from a warm
/// start (the outer loop passes a point already satisfying g <= tau).
///
/// The default scheme is a switching subgradient method: an iterate
/// violating the level constraint steps along -grad g with a Polyak-sized
/// feasibility step, a feasible iterate steps along a subgradient of f with
/// diminishing step sizes (c/sqrt(t), then geometrically decaying restarts
/// so sharp objectives reach tight tolerances); every step is projected
/// onto C and the best feasible iterate is tracked.
///
/// Structured objective/constraint pairs are dispatched to exact routes
/// that reach much tighter accuracy than the subgradient scheme within the
/// same budget:
///  - f quadratic distance, sublevel set of g projectable (halfspaces or
///    balls): one exact projection of the anchor onto C intersected with
///    {g <= tau} via Dykstra;
///  - f quadratic distance, g a quadratic form or residual norm: dual
///    bisection on the single constraint multiplier with an accelerated
///    projected-gradient inner loop;
///  - f the l1 norm, g a residual norm, C the whole space: an active-set
///    path solver for the penalized problem with a root find matching the
///    level exactly, then a crossover to the sparsest vertex of the
///    optimal face.
/// Every dispatched result is validated against the level constraint and
/// falls back to the switching scheme if it fails.
InnerResult solve_inner(const InnerProblem& problem, const Vector& warm_start);

}  // namespace sbp
