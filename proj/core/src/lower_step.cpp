#include "sbp/lower_step.hpp"

#include <cmath>

namespace sbp {

LowerStepResult lower_level_step(const FunctionOracle& g, const FeasibleSet& C,
                                 const Vector& x_k, const LowerStepOptions& opts) {
  if (x_k.size() != C.dimension()) throw DimensionMismatch(C.dimension(), x_k.size());
  if (opts.sigma <= 0.0 || opts.sigma >= 1.0)
    throw InvalidConfig("sigma must lie in (0,1)");
  double beta = std::clamp(opts.beta, opts.beta_min, opts.beta_max);

  Vector grad = g.first_order(x_k);
  Vector z = C.project(x_k - beta * grad, opts.dykstra);
  double dd = grad.dot(z - x_k);
  double tol_stat = 1e-12 * (1.0 + grad.norm() * (z - x_k).norm());

  if (dd > tol_stat) throw PositiveDirDeriv(dd);

  if (std::abs(dd) <= tol_stat) {
    return LowerStepResult{z, true, 1.0, 0, x_k, g.value(x_k), dd};
  }

  const double gx = g.value(x_k);
  double gamma = 1.0;
  for (int j = 0; j <= opts.max_backtracks; ++j, gamma *= 0.5) {
    Vector y = x_k + gamma * (z - x_k);
    double gy = g.value(y);
    if (gy < gx + opts.sigma * gamma * dd) {
      return LowerStepResult{z, false, gamma, j, std::move(y), gy, dd};
    }
  }
  throw ArmijoExhausted(opts.max_backtracks);
}

}  // namespace sbp
