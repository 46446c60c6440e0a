#pragma once

#include <variant>
#include <vector>

#include "sbp/feasible_set.hpp"

namespace sbp {

/// c'x + d
struct LinearFn {
  Vector c;
  double d = 0.0;
};

/// <x, Ax> with A symmetric positive semidefinite. Construction symmetrizes
/// and validates PSD-ness: eigenvalues down to -1e-10*||A|| are accepted and
/// clipped to zero via symmetric re-projection; anything below is rejected.
struct QuadraticForm {
  Matrix a;
};

/// ||Ax - b||^2
struct LeastSquares {
  Matrix a;
  Vector b;
};

/// 0.5 ||x - anchor||^2
struct SquaredDistance {
  Vector anchor;
};

/// sum_i |x_i|
struct L1Norm {
  Eigen::Index dim;
};

struct AffinePiece {
  Vector c;
  double d = 0.0;
};

/// max_i (c_i'x + d_i)
struct MaxOfAffine {
  std::vector<AffinePiece> pieces;
};

/// ((||x|| - 1)_+)^2 -- squared distance to the unit disc, continuously
/// differentiable across the unit circle.
struct DistToDiscSquared {
  Eigen::Index dim = 2;
};

/// A convex function with value plus gradient (smooth variants) or a
/// deterministic subgradient (nonsmooth variants). Total on R^n.
class FunctionOracle {
public:
  using Variant = std::variant<LinearFn, QuadraticForm, LeastSquares, SquaredDistance,
                               L1Norm, MaxOfAffine, DistToDiscSquared>;

  explicit FunctionOracle(Variant v);

  static FunctionOracle linear(Vector c, double d);
  static FunctionOracle quadratic_form(Matrix a);
  static FunctionOracle least_squares(Matrix a, Vector b);
  static FunctionOracle squared_distance(Vector anchor);
  static FunctionOracle l1_norm(Eigen::Index dim);
  static FunctionOracle max_of_affine(std::vector<AffinePiece> pieces);
  static FunctionOracle dist_to_disc_squared(Eigen::Index dim = 2);

  Eigen::Index dimension() const { return dim_; }
  bool smooth() const { return smooth_; }
  const Variant& variant() const { return v_; }

  double value(const Vector& x) const;

  /// Exact gradient; throws NotSmooth on nonsmooth variants.
  Vector gradient(const Vector& x) const;

  /// A valid subgradient with deterministic tie-breaking: the l1 norm picks
  /// 0 on zero coordinates, max-of-affine picks the lowest-index maximizer.
  /// Coincides with the gradient on smooth variants.
  Vector subgradient(const Vector& x) const;

  /// gradient() when smooth, subgradient() otherwise.
  Vector first_order(const Vector& x) const;

private:
  Variant v_;
  Eigen::Index dim_;
  bool smooth_;
};

/// Max over coordinates of |central difference - gradient| / (1 + |gradient|).
/// Requires x strictly inside the oracle's smooth region.
double check_gradient(const FunctionOracle& oracle, const Vector& x, double h);

}  // namespace sbp
