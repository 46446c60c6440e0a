#pragma once

#include <Eigen/Core>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "sbp/errors.hpp"

namespace sbp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct DykstraOptions {
  double tol = 1e-10;     ///< residual tolerance (Birgin-Raydan criterion)
  int max_sweeps = 10000; ///< sweep cap before DykstraNoConvergence
  bool throw_on_cap = true;
};

class FeasibleSet;

struct WholeSpace {
  Eigen::Index dim;
};

struct Box {
  Vector lower;
  Vector upper;
};

struct Ball {
  Vector center;
  double radius;
};

enum class Sense { LessEqual, GreaterEqual };

struct Halfspace {
  Vector normal;
  double offset;
  Sense sense = Sense::LessEqual;
};

/// { x >= 0, sum(x) = total }
struct Simplex {
  Eigen::Index dim;
  double total = 1.0;
};

struct Intersection {
  std::vector<FeasibleSet> members;
};

/// A convex set with an exact Euclidean projection. Primitive sets project
/// in closed form; intersections project with Dykstra's alternating scheme,
/// which converges to the nearest point (plain alternating projections only
/// reach some feasible point).
class FeasibleSet {
public:
  using Variant = std::variant<WholeSpace, Box, Ball, Halfspace, Simplex, Intersection>;

  explicit FeasibleSet(Variant v);

  static FeasibleSet whole_space(Eigen::Index dim);
  static FeasibleSet box(Vector lower, Vector upper);
  static FeasibleSet ball(Vector center, double radius);
  static FeasibleSet halfspace(Vector normal, double offset, Sense sense);
  static FeasibleSet simplex(Eigen::Index dim, double total = 1.0);
  static FeasibleSet intersection(std::vector<FeasibleSet> members);

  Eigen::Index dimension() const { return dim_; }
  const Variant& variant() const { return v_; }

  /// Euclidean-nearest point of the set. Idempotent up to the Dykstra
  /// tolerance for intersections, exact for primitives.
  Vector project(const Vector& p) const;
  Vector project(const Vector& p, const DykstraOptions& opts) const;

  /// True iff every defining constraint is violated by at most tol.
  bool contains(const Vector& p, double tol) const;

  /// Projects the origin and checks membership of the result; guards
  /// against empty intersections at load time.
  void feasibility_probe(double tol = 1e-10) const;

private:
  Variant v_;
  Eigen::Index dim_;
};

using Projector = std::function<Vector(const Vector&)>;

/// Dykstra's alternating projection scheme over an arbitrary list of
/// exact projectors. Returns the nearest point of the intersection.
/// Residual follows Birgin & Raydan's robust stopping rule (sum of
/// squared increment changes per sweep).
Vector dykstra_project(std::span<const Projector> projectors, const Vector& p,
                       const DykstraOptions& opts, int* sweeps_out = nullptr);

/// Collect closed-form projectors for a set (recursing through
/// intersections) so callers can compose them with extra constraints.
void collect_projectors(const FeasibleSet& set, std::vector<Projector>& out);

}  // namespace sbp
