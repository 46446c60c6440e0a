#include "sbp/inner_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace sbp {

namespace {

constexpr double kTiny = 1e-300;

// ---------------------------------------------------------------------------
// Projection onto {x : x'Px + q'x + r <= 0} with P symmetric PSD, via the
// eigendecomposition of P and a monotone root find on the multiplier.
// ---------------------------------------------------------------------------
struct QuadSublevel {
  Vector eigvals;  // eigenvalues of P
  Matrix eigvecs;
  Vector q;
  double r;

  double value(const Vector& x) const {
    Vector t = eigvecs.transpose() * x;
    return t.dot(eigvals.cwiseProduct(t)) + q.dot(x) + r;
  }

  Vector project(const Vector& p) const {
    if (value(p) <= 0.0) return p;
    Vector pt = eigvecs.transpose() * p;
    Vector qt = eigvecs.transpose() * q;
    auto eval = [&](double lam) {
      Vector xt = (pt - lam * qt).cwiseQuotient(
          (Vector::Ones(pt.size()) + 2.0 * lam * eigvals));
      double v = xt.dot(eigvals.cwiseProduct(xt)) + qt.dot(xt) + r;
      return std::make_pair(v, xt);
    };
    double lo = 0.0, hi = 1.0;
    while (eval(hi).first > 0.0 && hi < 1e18) hi *= 4.0;
    if (eval(hi).first > 0.0) return p;  // level set empty; caller validates
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (eval(mid).first > 0.0)
        lo = mid;
      else
        hi = mid;
      if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
    }
    return eigvecs * eval(hi).second;
  }
};

QuadSublevel make_quad_sublevel(const Matrix& p, const Vector& q, double r) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(p);
  return QuadSublevel{es.eigenvalues().cwiseMax(0.0), es.eigenvectors(), q, r};
}

// Closed-form projectors for {g <= tau}, when the sublevel set is a ball or
// an intersection of halfspaces. Returns nullopt when g has no such
// representation; sets *empty when the sublevel set is provably empty.
std::optional<std::vector<Projector>> sublevel_projectors(const FunctionOracle& g,
                                                          double tau, bool* empty) {
  *empty = false;
  std::vector<Projector> out;
  const auto& v = g.variant();
  if (const auto* dd = std::get_if<DistToDiscSquared>(&v)) {
    if (tau < 0.0) {
      *empty = true;
      return out;
    }
    double radius = 1.0 + std::sqrt(tau);
    Eigen::Index n = dd->dim;
    out.push_back([n, radius](const Vector& p) {
      double norm = p.norm();
      if (norm <= radius) return p;
      return Vector((radius / norm) * p);
    });
    return out;
  }
  if (const auto* sq = std::get_if<SquaredDistance>(&v)) {
    if (tau < 0.0) {
      *empty = true;
      return out;
    }
    Vector center = sq->anchor;
    double radius = std::sqrt(2.0 * tau);
    out.push_back([center, radius](const Vector& p) {
      Vector d = p - center;
      double norm = d.norm();
      if (norm <= radius) return p;
      return Vector(center + (radius / norm) * d);
    });
    return out;
  }
  auto push_halfspace = [&out](const Vector& c, double rhs) {
    Vector normal = c;
    double nn = normal.squaredNorm();
    out.push_back([normal, rhs, nn](const Vector& p) {
      double v = normal.dot(p) - rhs;
      if (v <= 0.0) return p;
      return Vector(p - (v / nn) * normal);
    });
  };
  if (const auto* lin = std::get_if<LinearFn>(&v)) {
    if (lin->c.norm() == 0.0) {
      if (lin->d > tau) *empty = true;
      return out;
    }
    push_halfspace(lin->c, tau - lin->d);
    return out;
  }
  if (const auto* ma = std::get_if<MaxOfAffine>(&v)) {
    for (const AffinePiece& piece : ma->pieces) {
      if (piece.c.norm() == 0.0) {
        if (piece.d > tau) {
          *empty = true;
          return out;
        }
        continue;
      }
      push_halfspace(piece.c, tau - piece.d);
    }
    return out;
  }
  return std::nullopt;
}

// Quadratic-sublevel description of {g <= tau} for quadratic-type g.
std::optional<QuadSublevel> quad_sublevel(const FunctionOracle& g, double tau) {
  const auto& v = g.variant();
  if (const auto* qf = std::get_if<QuadraticForm>(&v)) {
    return make_quad_sublevel(qf->a, Vector::Zero(qf->a.rows()), -tau);
  }
  if (const auto* ls = std::get_if<LeastSquares>(&v)) {
    Matrix p = ls->a.transpose() * ls->a;
    Vector q = -2.0 * (ls->a.transpose() * ls->b);
    double r = ls->b.squaredNorm() - tau;
    return make_quad_sublevel(p, q, r);
  }
  return std::nullopt;
}

double gradient_lipschitz(const FunctionOracle& g) {
  const auto& v = g.variant();
  if (const auto* qf = std::get_if<QuadraticForm>(&v)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(qf->a);
    return 2.0 * es.eigenvalues().maxCoeff();
  }
  if (const auto* ls = std::get_if<LeastSquares>(&v)) {
    Eigen::JacobiSVD<Matrix> svd(ls->a);
    double s = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    return 2.0 * s * s;
  }
  return 0.0;
}

Vector project_composite(const std::vector<Projector>& projs, const Vector& p,
                         const DykstraOptions& opts) {
  if (projs.empty()) return p;
  if (projs.size() == 1) return projs.front()(p);
  return dykstra_project(projs, p, opts);
}

// ---------------------------------------------------------------------------
// Route 1: f = squared distance, {g <= tau} projectable -> exact projection.
// ---------------------------------------------------------------------------
std::optional<InnerResult> route_projection(const InnerProblem& pb) {
  const auto* sq = std::get_if<SquaredDistance>(&pb.f.variant());
  if (!sq) return std::nullopt;
  bool empty = false;
  auto extra = sublevel_projectors(pb.g, pb.tau, &empty);
  if (!extra) return std::nullopt;
  if (empty) return std::nullopt;  // let the fallback report infeasibility
  std::vector<Projector> projs;
  collect_projectors(pb.C, projs);
  projs.insert(projs.end(), extra->begin(), extra->end());
  DykstraOptions opts;
  opts.tol = 1e-12;
  opts.max_sweeps = 20000;
  opts.throw_on_cap = false;
  int sweeps = 0;
  Vector x = projs.empty() ? sq->anchor
                           : dykstra_project(projs, sq->anchor, opts, &sweeps);
  InnerResult res;
  res.x_next = std::move(x);
  res.f_val = pb.f.value(res.x_next);
  res.g_val = pb.g.value(res.x_next);
  res.iterations = sweeps;
  res.best_feasible_found = true;
  return res;
}

// ---------------------------------------------------------------------------
// Route 2: f = squared distance, g quadratic-type -> dual bisection on the
// constraint multiplier; each evaluation minimizes the strongly convex
// Lagrangian over C with accelerated projected gradient.
// ---------------------------------------------------------------------------
std::optional<InnerResult> route_dual(const InnerProblem& pb, const Vector& warm) {
  const auto* sq = std::get_if<SquaredDistance>(&pb.f.variant());
  if (!sq) return std::nullopt;
  if (!quad_sublevel(pb.g, pb.tau)) return std::nullopt;

  DykstraOptions copts;
  copts.tol = 1e-13;
  copts.max_sweeps = 20000;
  copts.throw_on_cap = false;
  auto proj_c = [&](const Vector& p) { return pb.C.project(p, copts); };

  const double lip_g = gradient_lipschitz(pb.g);
  long used = 0;

  auto lagrangian_argmin = [&](double lam, Vector x) {
    const double lip = 1.0 + lam * lip_g;
    Vector xcur = proj_c(std::move(x));
    Vector y = xcur;
    double t = 1.0;
    for (int it = 0; it < 20000 && used < pb.budget; ++it, ++used) {
      Vector grad = (y - sq->anchor) + lam * pb.g.gradient(y);
      Vector xn = proj_c(y - grad / lip);
      double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      Vector diff = xn - xcur;
      if ((y - xn).dot(diff) > 0.0) {
        // momentum points uphill; restart acceleration
        t = 1.0;
        y = xn;
      } else {
        y = xn + ((t - 1.0) / tn) * diff;
        t = tn;
      }
      double step = diff.norm();
      xcur = std::move(xn);
      if (step <= 1e-15 * (1.0 + xcur.norm())) break;
    }
    return xcur;
  };

  Vector x0 = proj_c(warm);
  InnerResult res;
  res.best_feasible_found = true;
  if (pb.g.value(x0) <= pb.tau) {
    Vector x = lagrangian_argmin(0.0, sq->anchor);
    if (pb.g.value(x) <= pb.tau + pb.feas_tol) {
      res.x_next = std::move(x);
      res.f_val = pb.f.value(res.x_next);
      res.g_val = pb.g.value(res.x_next);
      res.iterations = used;
      return res;
    }
  }
  double lo = 0.0, hi = 1.0;
  Vector x = x0;
  while (true) {
    x = lagrangian_argmin(hi, x);
    if (pb.g.value(x) <= pb.tau) break;
    hi *= 4.0;
    if (hi > 1e14 || used >= pb.budget) {
      // level unreachable: report the least-g iterate
      res.x_next = std::move(x);
      res.f_val = pb.f.value(res.x_next);
      res.g_val = pb.g.value(res.x_next);
      res.iterations = used;
      res.best_feasible_found = res.g_val <= pb.tau + pb.feas_tol;
      return res;
    }
  }
  Vector x_feas = x;
  for (int it = 0; it < 200 && used < pb.budget; ++it) {
    double mid = 0.5 * (lo + hi);
    x = lagrangian_argmin(mid, x);
    if (pb.g.value(x) > pb.tau) {
      lo = mid;
    } else {
      hi = mid;
      x_feas = x;
    }
    if (hi - lo <= 1e-13 * hi) break;
  }
  res.x_next = std::move(x_feas);
  res.f_val = pb.f.value(res.x_next);
  res.g_val = pb.g.value(res.x_next);
  res.iterations = used;
  return res;
}

// ---------------------------------------------------------------------------
// Route 3: f = l1 norm, g = residual norm, C = whole space.
// Active-set solver for min 0.5||Ax-b||^2 + w||x||_1, bisection on w so the
// residual matches the level, then crossover to the sparsest vertex of the
// optimal face.
// ---------------------------------------------------------------------------
struct LassoSolver {
  const Matrix& a;
  const Vector& b;
  Matrix gram;
  Vector atb;
  long steps = 0;

  explicit LassoSolver(const Matrix& a_, const Vector& b_)
      : a(a_), b(b_), gram(a_.transpose() * a_), atb(a_.transpose() * b_) {}

  Vector solve(double w, Vector x) {
    const Eigen::Index n = a.cols();
    if (x.size() != n) x = Vector::Zero(n);
    const long max_steps = 40 * n + 200;
    // a coordinate dropped at a zero-length crossing step is barred from
    // immediate re-activation, which would cycle without progress
    Eigen::Index last_removed = -1;
    for (long step = 0; step < max_steps; ++step) {
      ++steps;
      std::vector<Eigen::Index> supp;
      for (Eigen::Index i = 0; i < n; ++i)
        if (x(i) != 0.0) supp.push_back(i);
      if (!supp.empty()) {
        const Eigen::Index k = static_cast<Eigen::Index>(supp.size());
        Matrix gs(k, k);
        Vector rhs(k), theta(k);
        for (Eigen::Index r = 0; r < k; ++r) {
          theta(r) = x(supp[static_cast<std::size_t>(r)]) > 0.0 ? 1.0 : -1.0;
          rhs(r) = atb(supp[static_cast<std::size_t>(r)]) - w * theta(r);
          for (Eigen::Index c = 0; c < k; ++c)
            gs(r, c) = gram(supp[static_cast<std::size_t>(r)],
                            supp[static_cast<std::size_t>(c)]);
        }
        Eigen::FullPivLU<Matrix> lu(gs);
        if (lu.rank() < k) {
          // dependent active columns: the orthant objective is linear along
          // the kernel, so slide to the nearest zero crossing and drop it
          Vector xcur(k);
          for (Eigen::Index r = 0; r < k; ++r) xcur(r) = x(supp[static_cast<std::size_t>(r)]);
          Vector v = lu.kernel().col(0);
          if ((gs * xcur - rhs).dot(v) > 0.0) v = -v;
          double tbest = std::numeric_limits<double>::infinity();
          Eigen::Index ibest = -1;
          for (int pass = 0; pass < 2 && ibest < 0; ++pass) {
            for (Eigen::Index r = 0; r < k; ++r) {
              if (v(r) == 0.0) continue;
              double t = -xcur(r) / v(r);
              if (t >= 0.0 && t < tbest) {
                tbest = t;
                ibest = r;
              }
            }
            if (ibest < 0) v = -v;  // no crossing downhill; flat, go the other way
          }
          if (ibest >= 0) {
            for (Eigen::Index r = 0; r < k; ++r)
              x(supp[static_cast<std::size_t>(r)]) = xcur(r) + tbest * v(r);
            x(supp[static_cast<std::size_t>(ibest)]) = 0.0;
            continue;
          }
        }
        Vector xs = lu.isInvertible() ? Vector(lu.solve(rhs))
                                      : Vector(gs.completeOrthogonalDecomposition().solve(rhs));
        bool crossed = false;
        double tmin = 1.0;
        Eigen::Index imin = -1;
        for (Eigen::Index r = 0; r < k; ++r) {
          if (xs(r) * theta(r) < 0.0) {
            double xr = x(supp[static_cast<std::size_t>(r)]);
            double t = xr != xs(r) ? xr / (xr - xs(r)) : 0.0;
            if (!crossed || t < tmin) {
              tmin = t;
              imin = r;
            }
            crossed = true;
          }
        }
        if (crossed) {
          for (Eigen::Index r = 0; r < k; ++r) {
            Eigen::Index i = supp[static_cast<std::size_t>(r)];
            x(i) = x(i) + tmin * (xs(r) - x(i));
          }
          x(supp[static_cast<std::size_t>(imin)]) = 0.0;
          last_removed = tmin <= 1e-14 ? supp[static_cast<std::size_t>(imin)] : -1;
          double snap = 1e-14 * std::max(1.0, x.cwiseAbs().maxCoeff());
          for (Eigen::Index i = 0; i < n; ++i)
            if (std::abs(x(i)) < snap) x(i) = 0.0;
          continue;
        }
        for (Eigen::Index r = 0; r < k; ++r)
          x(supp[static_cast<std::size_t>(r)]) = xs(r);
      }
      Vector grad = gram * x - atb;
      Eigen::Index jbest = -1;
      double worst = w * (1.0 + 1e-12) + 1e-15;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (x(i) != 0.0 || i == last_removed) continue;
        if (std::abs(grad(i)) > worst) {
          worst = std::abs(grad(i));
          jbest = i;
        }
      }
      if (jbest < 0) return x;
      x(jbest) = grad(jbest) > 0.0 ? -kTiny : kTiny;
      last_removed = -1;
    }
    return x;
  }
};

// Sparsest sign-consistent solution of A z = A x among coordinates allowed
// by the dual certificate; preserves the fitted value, the residual and the
// l1 norm, so the level constraint is untouched.
Vector sparsest_face_vertex(const Matrix& a, const Vector& b, const Vector& x, double w) {
  if (w <= 0.0) return x;
  const Eigen::Index n = a.cols();
  Vector resid = b - a * x;
  Vector s = (a.transpose() * resid) / w;
  std::vector<Eigen::Index> face;
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(s(i)) >= 1.0 - 1e-6) face.push_back(i);
  Vector c = a * x;
  const double cscale = std::max(1.0, c.norm());
  const double l1 = x.lpNorm<1>();
  int nz_now = 0;
  double snap = 1e-10 * std::max(1.0, x.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(x(i)) > snap) ++nz_now;
  const int kmax = static_cast<int>(
      std::min<Eigen::Index>({static_cast<Eigen::Index>(face.size()), a.rows(),
                              static_cast<Eigen::Index>(nz_now)}));
  if (face.size() > 16) return x;  // enumeration would blow up; keep x

  std::vector<Eigen::Index> combo;
  Vector best;
  double best_l1 = std::numeric_limits<double>::infinity();
  auto try_combo = [&]() {
    const Eigen::Index k = static_cast<Eigen::Index>(combo.size());
    Matrix ab(a.rows(), k);
    for (Eigen::Index j = 0; j < k; ++j) ab.col(j) = a.col(combo[static_cast<std::size_t>(j)]);
    Vector xb = k ? Vector(ab.completeOrthogonalDecomposition().solve(c)) : Vector(0);
    double res = k ? (ab * xb - c).norm() : c.norm();
    if (res > 1e-9 * cscale) return;
    for (Eigen::Index j = 0; j < k; ++j)
      if (xb(j) * s(combo[static_cast<std::size_t>(j)]) < -1e-12) return;
    Vector z = Vector::Zero(n);
    for (Eigen::Index j = 0; j < k; ++j) z(combo[static_cast<std::size_t>(j)]) = xb(j);
    double zl1 = z.lpNorm<1>();
    if (zl1 > l1 + 1e-9 * std::max(1.0, l1)) return;
    if (zl1 < best_l1) {
      best_l1 = zl1;
      best = std::move(z);
    }
  };
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int need) {
    if (need == 0) {
      try_combo();
      return;
    }
    for (std::size_t i = start; i + static_cast<std::size_t>(need) <= face.size(); ++i) {
      combo.push_back(face[i]);
      rec(i + 1, need - 1);
      combo.pop_back();
    }
  };
  for (int k = 0; k <= kmax; ++k) {
    best_l1 = std::numeric_limits<double>::infinity();
    best = Vector();
    rec(0, k);
    if (best.size()) return best;
  }
  return x;
}

std::optional<InnerResult> route_l1_least_squares(const InnerProblem& pb) {
  if (!std::holds_alternative<L1Norm>(pb.f.variant())) return std::nullopt;
  const auto* ls = std::get_if<LeastSquares>(&pb.g.variant());
  if (!ls) return std::nullopt;
  if (!std::holds_alternative<WholeSpace>(pb.C.variant())) return std::nullopt;

  InnerResult res;
  const Eigen::Index n = ls->a.cols();
  if (ls->b.squaredNorm() <= pb.tau) {
    res.x_next = Vector::Zero(n);
    res.f_val = 0.0;
    res.g_val = ls->b.squaredNorm();
    res.best_feasible_found = true;
    return res;
  }
  LassoSolver lasso(ls->a, ls->b);
  auto residual2 = [&](const Vector& x) { return (ls->a * x - ls->b).squaredNorm(); };

  double wlo = 1e-16;
  double whi = (ls->a.transpose() * ls->b).cwiseAbs().maxCoeff() * 1.0001;
  Vector x = lasso.solve(wlo, Vector::Zero(n));
  if (residual2(x) > pb.tau) {
    // tau below the reachable residual: report the least-g point found
    res.x_next = std::move(x);
    res.f_val = pb.f.value(res.x_next);
    res.g_val = pb.g.value(res.x_next);
    res.iterations = lasso.steps;
    res.best_feasible_found = res.g_val <= pb.tau + pb.feas_tol;
    return res;
  }
  for (int it = 0; it < 220; ++it) {
    double w = std::sqrt(wlo * whi);
    x = lasso.solve(w, x);
    if (residual2(x) > pb.tau)
      whi = w;
    else
      wlo = w;
    if (whi / wlo < 1.0 + 1e-14) break;
  }
  x = lasso.solve(wlo, x);
  x = sparsest_face_vertex(ls->a, ls->b, x, wlo);
  res.x_next = std::move(x);
  res.f_val = pb.f.value(res.x_next);
  res.g_val = pb.g.value(res.x_next);
  res.iterations = lasso.steps;
  res.best_feasible_found = res.g_val <= pb.tau + pb.feas_tol;
  return res;
}

// ---------------------------------------------------------------------------
// Route 4: smooth f over the projectable region C ∩ {g <= tau} -> projected
// gradient with backtracking.
// ---------------------------------------------------------------------------
std::optional<InnerResult> route_smooth(const InnerProblem& pb, const Vector& warm) {
  if (!pb.f.smooth()) return std::nullopt;
  std::vector<Projector> projs;
  collect_projectors(pb.C, projs);
  bool empty = false;
  if (auto extra = sublevel_projectors(pb.g, pb.tau, &empty); extra && !empty) {
    projs.insert(projs.end(), extra->begin(), extra->end());
  } else if (auto quad = quad_sublevel(pb.g, pb.tau); quad && !empty) {
    QuadSublevel qs = std::move(*quad);
    projs.push_back([qs](const Vector& p) { return qs.project(p); });
  } else {
    return std::nullopt;
  }
  DykstraOptions opts;
  opts.tol = 1e-12;
  opts.max_sweeps = 20000;
  opts.throw_on_cap = false;
  auto proj_k = [&](const Vector& p) { return project_composite(projs, p, opts); };

  Vector x = proj_k(warm);
  double fx = pb.f.value(x);
  double step = 1.0;
  long used = 0;
  int calm = 0;
  for (long it = 0; it < pb.budget; ++it, ++used) {
    Vector grad = pb.f.gradient(x);
    Vector xn;
    double fn = 0.0;
    for (int bt = 0; bt < 60; ++bt) {
      xn = proj_k(x - step * grad);
      fn = pb.f.value(xn);
      double quad_bound =
          fx + grad.dot(xn - x) + (xn - x).squaredNorm() / (2.0 * step) + 1e-18;
      if (fn <= quad_bound) break;
      step *= 0.5;
    }
    double move = (xn - x).norm();
    x = std::move(xn);
    fx = fn;
    step = std::min(step * 1.3, 1e8);
    if (move <= 1e-13 * (1.0 + x.norm())) {
      if (++calm >= 3) break;
    } else {
      calm = 0;
    }
  }
  InnerResult res;
  res.x_next = std::move(x);
  res.f_val = pb.f.value(res.x_next);
  res.g_val = pb.g.value(res.x_next);
  res.iterations = used;
  res.best_feasible_found = res.g_val <= pb.tau + pb.feas_tol;
  return res;
}

// ---------------------------------------------------------------------------
// Fallback: the switching subgradient scheme.
// ---------------------------------------------------------------------------
InnerResult route_switching(const InnerProblem& pb, const Vector& warm) {
  DykstraOptions copts;
  copts.tol = 1e-12;
  copts.max_sweeps = 10000;
  copts.throw_on_cap = false;
  Vector x = pb.C.project(warm, copts);

  InnerResult res;
  res.best_feasible_found = false;
  double best_f = std::numeric_limits<double>::infinity();
  Vector best_x = x;
  double least_g = std::numeric_limits<double>::infinity();
  Vector least_gx = x;

  const double c = 1.0 + warm.norm();
  const long phase1 = std::min<long>(pb.budget, 25000);
  double geo_step = 0.0;
  long t = 0;
  for (t = 1; t <= pb.budget; ++t) {
    double gv = pb.g.value(x);
    if (gv < least_g) {
      least_g = gv;
      least_gx = x;
    }
    if (gv <= pb.tau + pb.feas_tol) {
      double fv = pb.f.value(x);
      if (fv < best_f) {
        best_f = fv;
        best_x = x;
        res.best_feasible_found = true;
      }
      Vector d = pb.f.subgradient(x);
      double nd = d.norm();
      if (nd < 1e-18) break;  // unconstrained minimum of f reached
      double s;
      if (t <= phase1) {
        s = c / std::sqrt(static_cast<double>(t));
      } else {
        if (geo_step == 0.0) geo_step = c / std::sqrt(static_cast<double>(phase1));
        if ((t - phase1) % 200 == 0) geo_step *= 0.75;
        s = geo_step;
        // gap estimate: remaining steps cannot move f beyond epsilon scale
        if (s < std::max(1e-16, 1e-3 * pb.epsilon) * c) break;
      }
      x = pb.C.project(x - (s / nd) * d, copts);
    } else {
      Vector d = pb.g.first_order(x);
      double nd2 = d.squaredNorm();
      if (nd2 < 1e-30) break;
      double s = (gv - pb.tau) / nd2;  // Polyak feasibility step
      x = pb.C.project(x - s * d, copts);
    }
  }
  res.x_next = res.best_feasible_found ? best_x : least_gx;
  res.f_val = pb.f.value(res.x_next);
  res.g_val = pb.g.value(res.x_next);
  res.iterations = std::min(t, pb.budget);
  return res;
}

bool acceptable(const InnerProblem& pb, const InnerResult& res) {
  if (!res.best_feasible_found) return false;
  if (res.g_val > pb.tau + pb.feas_tol) return false;
  if (!pb.C.contains(res.x_next, std::max(pb.feas_tol * 10.0, 1e-8))) return false;
  return true;
}

}  // namespace

InnerResult solve_inner(const InnerProblem& problem, const Vector& warm_start) {
  if (warm_start.size() != problem.C.dimension())
    throw DimensionMismatch(problem.C.dimension(), warm_start.size());

  std::optional<InnerResult> res = route_l1_least_squares(problem);
  if (!res) res = route_projection(problem);
  if (!res) res = route_dual(problem, warm_start);
  if (!res) res = route_smooth(problem, warm_start);
  if (res && acceptable(problem, *res)) return *res;

  InnerResult sw = route_switching(problem, warm_start);
  if (res && res->best_feasible_found &&
      (!sw.best_feasible_found || res->f_val <= sw.f_val) &&
      res->g_val <= problem.tau + problem.feas_tol) {
    return *res;
  }
  return sw;
}

}  // namespace sbp
