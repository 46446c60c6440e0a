#pragma once

#include <string>
#include <vector>

#include "sbp/solver.hpp"

namespace sbp {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Property suites runnable without any experiment data: projection
/// identities (idempotence, nonexpansiveness, variational inequality,
/// fixed points), oracle checks (finite-difference gradients, subgradient
/// inequality, convexity sampling), the sign and descent properties of the
/// lower-level step, summable-perturbation convergence on synthetic
/// sequences, and inner-solver equivalence against a brute-force grid on
/// the bundled 2-d instances.
std::vector<CheckResult> run_property_suites(unsigned seed = 7);

bool all_passed(const std::vector<CheckResult>& results);

/// Brute-force zoom-grid minimizer of f over C ∩ {g <= tau} for 2-d
/// instances; independent of the inner solver. Returns the best f found.
double grid_oracle_2d(const FunctionOracle& f, const FunctionOracle& g,
                      const FeasibleSet& C, double tau, Vector* argmin = nullptr);

}  // namespace sbp
