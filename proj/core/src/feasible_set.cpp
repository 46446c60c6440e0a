#include "sbp/feasible_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sbp {

namespace {

Eigen::Index variant_dimension(const FeasibleSet::Variant& v) {
  return std::visit(
      [](const auto& s) -> Eigen::Index {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return s.dim;
        } else if constexpr (std::is_same_v<T, Box>) {
          return s.lower.size();
        } else if constexpr (std::is_same_v<T, Ball>) {
          return s.center.size();
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          return s.normal.size();
        } else if constexpr (std::is_same_v<T, Simplex>) {
          return s.dim;
        } else {
          const Intersection& ix = s;
          return ix.members.empty() ? 0 : ix.members.front().dimension();
        }
      },
      v);
}

Vector project_box(const Box& b, const Vector& p) {
  return p.cwiseMax(b.lower).cwiseMin(b.upper);
}

Vector project_ball(const Ball& b, const Vector& p) {
  Vector d = p - b.center;
  double n = d.norm();
  if (n <= b.radius) return p;
  return b.center + (b.radius / n) * d;
}

Vector project_halfspace(const Halfspace& h, const Vector& p) {
  double v = h.normal.dot(p) - h.offset;
  if (h.sense == Sense::LessEqual ? v <= 0.0 : v >= 0.0) return p;
  return p - (v / h.normal.squaredNorm()) * h.normal;
}

// Sort-and-threshold simplex projection, O(n log n).
Vector project_simplex(const Simplex& s, const Vector& p) {
  std::vector<double> u(p.data(), p.data() + p.size());
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  Eigen::Index rho = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    css += u[static_cast<std::size_t>(i)];
    double t = (css - s.total) / static_cast<double>(i + 1);
    if (u[static_cast<std::size_t>(i)] - t > 0.0) {
      rho = i + 1;
      theta = t;
    }
  }
  (void)rho;
  return (p.array() - theta).max(0.0).matrix();
}

}  // namespace

FeasibleSet::FeasibleSet(Variant v) : v_(std::move(v)), dim_(variant_dimension(v_)) {
  std::visit(
      [this](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          if (s.lower.size() != s.upper.size())
            throw DimensionMismatch(s.lower.size(), s.upper.size());
          if ((s.lower.array() > s.upper.array()).any())
            throw ValidationError("box", "lower exceeds upper");
        } else if constexpr (std::is_same_v<T, Ball>) {
          if (s.radius < 0.0) throw ValidationError("ball", "negative radius");
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          if (s.normal.norm() == 0.0) throw ValidationError("halfspace", "zero normal");
        } else if constexpr (std::is_same_v<T, Simplex>) {
          if (s.total <= 0.0) throw ValidationError("simplex", "total must be positive");
          if (s.dim <= 0) throw ValidationError("simplex", "dimension must be positive");
        } else if constexpr (std::is_same_v<T, Intersection>) {
          if (s.members.empty())
            throw ValidationError("intersection", "needs at least one member");
          for (const FeasibleSet& m : s.members)
            if (m.dimension() != dim_)
              throw DimensionMismatch(dim_, m.dimension());
        }
      },
      v_);
}

FeasibleSet FeasibleSet::whole_space(Eigen::Index dim) {
  return FeasibleSet(WholeSpace{dim});
}
FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
  return FeasibleSet(Box{std::move(lower), std::move(upper)});
}
FeasibleSet FeasibleSet::ball(Vector center, double radius) {
  return FeasibleSet(Ball{std::move(center), radius});
}
FeasibleSet FeasibleSet::halfspace(Vector normal, double offset, Sense sense) {
  return FeasibleSet(Halfspace{std::move(normal), offset, sense});
}
FeasibleSet FeasibleSet::simplex(Eigen::Index dim, double total) {
  return FeasibleSet(Simplex{dim, total});
}
FeasibleSet FeasibleSet::intersection(std::vector<FeasibleSet> members) {
  return FeasibleSet(Intersection{std::move(members)});
}

Vector dykstra_project(std::span<const Projector> projectors, const Vector& p,
                       const DykstraOptions& opts, int* sweeps_out) {
  const std::size_t m = projectors.size();
  Vector x = p;
  std::vector<Vector> q(m, Vector::Zero(p.size()));
  double rnorm = 0.0;
  // Far starting points need sweeps proportional to their distance: the
  // increment vectors carry the full offset and rotate by O(1/distance)
  // per sweep. The cap is widened accordingly after the first sweep.
  long cap = opts.max_sweeps;
  for (long sweep = 0; sweep < cap; ++sweep) {
    rnorm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      Vector y = projectors[i](x + q[i]);
      Vector qn = x + q[i] - y;
      rnorm += (qn - q[i]).squaredNorm();
      q[i] = std::move(qn);
      x = std::move(y);
    }
    if (sweep == 0) {
      double dist = (x - p).norm();
      cap = std::max<long>(cap, std::min<long>(5000000, static_cast<long>(100.0 * (1.0 + dist))));
    }
    if (std::sqrt(rnorm) <= opts.tol) {
      if (sweeps_out) *sweeps_out = static_cast<int>(sweep + 1);
      return x;
    }
  }
  if (sweeps_out) *sweeps_out = static_cast<int>(std::min<long>(cap, INT32_MAX));
  if (opts.throw_on_cap) throw DykstraNoConvergence(std::sqrt(rnorm), static_cast<int>(cap));
  return x;
}

void collect_projectors(const FeasibleSet& set, std::vector<Projector>& out) {
  std::visit(
      [&out](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          // identity; contributes nothing
        } else if constexpr (std::is_same_v<T, Box>) {
          out.push_back([s](const Vector& p) { return project_box(s, p); });
        } else if constexpr (std::is_same_v<T, Ball>) {
          out.push_back([s](const Vector& p) { return project_ball(s, p); });
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          out.push_back([s](const Vector& p) { return project_halfspace(s, p); });
        } else if constexpr (std::is_same_v<T, Simplex>) {
          out.push_back([s](const Vector& p) { return project_simplex(s, p); });
        } else {
          for (const FeasibleSet& m : s.members) collect_projectors(m, out);
        }
      },
      set.variant());
}

Vector FeasibleSet::project(const Vector& p) const {
  return project(p, DykstraOptions{});
}

Vector FeasibleSet::project(const Vector& p, const DykstraOptions& opts) const {
  if (p.size() != dim_) throw DimensionMismatch(dim_, p.size());
  return std::visit(
      [&](const auto& s) -> Vector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return p;
        } else if constexpr (std::is_same_v<T, Box>) {
          return project_box(s, p);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return project_ball(s, p);
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          return project_halfspace(s, p);
        } else if constexpr (std::is_same_v<T, Simplex>) {
          return project_simplex(s, p);
        } else {
          std::vector<Projector> projs;
          collect_projectors(*this, projs);
          if (projs.empty()) return p;
          if (projs.size() == 1) return projs.front()(p);
          return dykstra_project(projs, p, opts);
        }
      },
      v_);
}

bool FeasibleSet::contains(const Vector& p, double tol) const {
  if (p.size() != dim_) throw DimensionMismatch(dim_, p.size());
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return true;
        } else if constexpr (std::is_same_v<T, Box>) {
          return (p.array() >= s.lower.array() - tol).all() &&
                 (p.array() <= s.upper.array() + tol).all();
        } else if constexpr (std::is_same_v<T, Ball>) {
          return (p - s.center).norm() <= s.radius + tol;
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          double v = (s.normal.dot(p) - s.offset) / s.normal.norm();
          return s.sense == Sense::LessEqual ? v <= tol : v >= -tol;
        } else if constexpr (std::is_same_v<T, Simplex>) {
          return (p.array() >= -tol).all() && std::abs(p.sum() - s.total) <= tol;
        } else {
          for (const FeasibleSet& m : s.members)
            if (!m.contains(p, tol)) return false;
          return true;
        }
      },
      v_);
}

void FeasibleSet::feasibility_probe(double tol) const {
  Vector probe = project(Vector::Zero(dim_));
  if (!contains(probe, tol * 100.0))
    throw ValidationError("set", "feasibility probe failed; intersection may be empty");
}

}  // namespace sbp
