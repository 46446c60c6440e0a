#pragma once

#include "sbp/feasible_set.hpp"
#include "sbp/oracles.hpp"

namespace sbp {

struct LowerStepOptions {
  double beta = 1.0;
  double beta_min = 1e-4;
  double beta_max = 1e4;
  double sigma = 0.1;      ///< descent fraction, in (0,1)
  int max_backtracks = 60; ///< 2^-60 underflows the descent test meaningfully
  DykstraOptions dykstra;
};

struct LowerStepResult {
  Vector z_k;       ///< projected-gradient target P_C(x - beta * grad g(x))
  bool stationary;  ///< |<grad g, z - x>| below the relative threshold
  double gamma_k;   ///< accepted step 2^-l_k (1 when stationary)
  int l_k;          ///< smallest accepted backtracking exponent
  Vector y_k;       ///< x + gamma (z - x); equals x when stationary
  double alpha_k;   ///< g(x) when stationary, g(y) otherwise
  double dir_deriv; ///< <grad g(x), z - x>, always <= tol_stat
};

/// One relaxation step on the lower-level objective: projected-gradient
/// target, stationarity test, then backtracking until the strict descent
/// inequality g(x + 2^-j (z-x)) < g(x) + sigma 2^-j <grad g(x), z-x> holds.
/// The backtracking exponent starts at 0, so full steps are admitted.
///
/// The stationarity case split is exact-zero in theory; numerically a point
/// counts as stationary when |dir_deriv| <= 1e-12 * (1 + ||grad|| ||z-x||).
/// A nonsmooth lower-level oracle is accepted by substituting its
/// deterministic subgradient; the sign property of dir_deriv holds for any
/// step vector.
LowerStepResult lower_level_step(const FunctionOracle& g, const FeasibleSet& C,
                                 const Vector& x_k, const LowerStepOptions& opts = {});

}  // namespace sbp
