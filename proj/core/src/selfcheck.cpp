#include "sbp/selfcheck.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "sbp/experiments.hpp"
#include "sbp/inner_solver.hpp"

namespace sbp {

namespace {

using Rng = std::mt19937_64;

Vector random_vector(Rng& rng, Eigen::Index n, double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}


std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

bool exactly_equal(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

struct NamedSet {
  std::string name;
  FeasibleSet set;
};

std::vector<NamedSet> property_sets() {
  Vector mu(8);
  mu << 1.0630, 1.0633, 1.0670, 1.0853, 1.0882, 1.0778, 1.0820, 1.1605;
  Vector lo = Vector::Constant(2, -3.0), hi = Vector::Constant(2, 0.5);
  std::vector<NamedSet> sets;
  sets.push_back({"whole_space", FeasibleSet::whole_space(3)});
  sets.push_back({"box", FeasibleSet::box(lo, hi)});
  sets.push_back({"ball", FeasibleSet::ball(Vector::Zero(3), 1.5)});
  Vector n1(3);
  n1 << 1.0, -2.0, 0.5;
  sets.push_back({"halfspace", FeasibleSet::halfspace(n1, 0.7, Sense::LessEqual)});
  sets.push_back({"simplex", FeasibleSet::simplex(5, 1.0)});
  sets.push_back({"intersection_ball_box",
                  FeasibleSet::intersection({FeasibleSet::ball(Vector::Zero(2), std::sqrt(2.0)),
                                             FeasibleSet::box(lo, hi)})});
  sets.push_back({"intersection_simplex_halfspace",
                  FeasibleSet::intersection(
                      {FeasibleSet::simplex(8, 1.0),
                       FeasibleSet::halfspace(mu, 0.05, Sense::GreaterEqual)})});
  return sets;
}

CheckResult check_projection_idempotence(Rng& rng, int trials) {
  const double tol_proj = 1e-10;
  double worst = 0.0;
  for (const NamedSet& ns : property_sets()) {
    for (int t = 0; t < trials; ++t) {
      Vector p = random_vector(rng, ns.set.dimension(), 3.0);
      Vector q = ns.set.project(p);
      worst = std::max(worst, (ns.set.project(q) - q).norm());
    }
  }
  return {"projection.idempotence", worst <= 10.0 * tol_proj,
          "max drift " + sci(worst)};
}

CheckResult check_projection_nonexpansive(Rng& rng, int trials) {
  const double tol_proj = 1e-10;
  double worst = 0.0;
  for (const NamedSet& ns : property_sets()) {
    for (int t = 0; t < trials; ++t) {
      Vector p = random_vector(rng, ns.set.dimension(), 3.0);
      Vector q = random_vector(rng, ns.set.dimension(), 3.0);
      double lhs = (ns.set.project(p) - ns.set.project(q)).norm();
      worst = std::max(worst, lhs - (p - q).norm());
    }
  }
  return {"projection.nonexpansive", worst <= 10.0 * tol_proj,
          "max excess " + sci(worst)};
}

CheckResult check_projection_variational(Rng& rng, int trials) {
  double worst = -1e300;
  for (const NamedSet& ns : property_sets()) {
    for (int t = 0; t < trials / 10; ++t) {
      Vector p = random_vector(rng, ns.set.dimension(), 3.0);
      Vector px = ns.set.project(p);
      for (int c = 0; c < 100; ++c) {
        Vector cand = ns.set.project(random_vector(rng, ns.set.dimension(), 3.0));
        worst = std::max(worst, (p - px).dot(cand - px));
      }
    }
  }
  return {"projection.variational", worst <= 1e-8, "max inner product " + sci(worst)};
}

CheckResult check_projection_fixed_point(Rng& rng, int trials) {
  // exactly representable interior points of each primitive
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  bool ok = true;
  std::string detail = "exact";
  for (int t = 0; t < trials && ok; ++t) {
    {
      Vector lo = Vector::Constant(2, -3.0), hi = Vector::Constant(2, 0.5);
      Vector p(2);
      p << -1.0 + u01(rng), -2.0 + u01(rng);
      if (!exactly_equal(FeasibleSet::box(lo, hi).project(p), p)) { ok = false; detail = "box"; }
    }
    {
      Vector p = random_vector(rng, 3, 0.3);
      if (p.norm() < 1.5 && !exactly_equal(FeasibleSet::ball(Vector::Zero(3), 1.5).project(p), p)) {
        ok = false;
        detail = "ball";
      }
    }
    {
      Vector p = Vector::Zero(4);
      int i = static_cast<int>(u01(rng) * 4) % 4;
      int j = (i + 1) % 4;
      p(i) = 0.5;
      p(j) = 0.5;
      if (!exactly_equal(FeasibleSet::simplex(4, 1.0).project(p), p)) { ok = false; detail = "simplex"; }
    }
  }
  return {"projection.fixed_point", ok, detail};
}

CheckResult check_gradients_fd(Rng& rng, int points) {
  Matrix a54(8, 8);
  a54 << 0.0009, -0.0001, 0.0001, 0.0001, -0.0003, 0.0003, -0.0013, 0.0008,
      -0.0001, 0.0232, 0.0113, 0.0106, 0.0118, 0.0115, 0.0110, -0.0141,
      0.0001, 0.0113, 0.0283, 0.0297, 0.0329, 0.0075, 0.0219, -0.0185,
      0.0001, 0.0106, 0.0297, 0.0319, 0.0371, 0.0071, 0.0231, -0.0166,
      -0.0003, 0.0118, 0.0329, 0.0371, 0.0500, 0.0076, 0.0245, -0.0164,
      0.0003, 0.0115, 0.0075, 0.0071, 0.0076, 0.0065, 0.0044, -0.0115,
      -0.0013, 0.0110, 0.0219, 0.0231, 0.0245, 0.0044, 0.0554, -0.0140,
      0.0008, -0.0141, -0.0185, -0.0166, -0.0164, -0.0115, -0.0140, 0.1271;
  Matrix a52(3, 4);
  a52 << 1, 2, -3, 1, 3, -1, -2, -4, 2, 3, -5, 1;
  Vector b52(3);
  b52 << -2, 1, -3;
  std::vector<FunctionOracle> smooth;
  smooth.push_back(FunctionOracle::linear(random_vector(rng, 4, 1.0), 0.3));
  smooth.push_back(FunctionOracle::quadratic_form(a54));
  smooth.push_back(FunctionOracle::least_squares(a52, b52));
  smooth.push_back(FunctionOracle::squared_distance(random_vector(rng, 5, 1.0)));
  smooth.push_back(FunctionOracle::dist_to_disc_squared(2));

  double worst = 0.0;
  for (const FunctionOracle& f : smooth) {
    for (int t = 0; t < points; ++t) {
      Vector x = random_vector(rng, f.dimension(), 1.5);
      if (std::holds_alternative<DistToDiscSquared>(f.variant())) {
        // keep away from the (smooth but curvature-jumping) unit circle
        double r = x.norm();
        if (std::abs(r - 1.0) < 0.05) x *= 1.2;
      }
      worst = std::max(worst, check_gradient(f, x, 1e-6));
    }
  }
  return {"oracle.gradient_fd", worst < 1e-5, "max relative error " + sci(worst)};
}

CheckResult check_subgradient_inequality(Rng& rng, int pairs) {
  std::vector<FunctionOracle> nonsmooth;
  nonsmooth.push_back(FunctionOracle::l1_norm(4));
  std::vector<AffinePiece> pieces{{random_vector(rng, 3, 1.0), 0.2},
                                  {Vector::Zero(3), 0.0},
                                  {random_vector(rng, 3, 1.0), -0.4}};
  nonsmooth.push_back(FunctionOracle::max_of_affine(pieces));
  double worst = 0.0;
  for (const FunctionOracle& f : nonsmooth) {
    for (int t = 0; t < pairs; ++t) {
      Vector x = random_vector(rng, f.dimension(), 2.0);
      Vector y = random_vector(rng, f.dimension(), 2.0);
      Vector s = f.subgradient(x);
      worst = std::max(worst, f.value(x) + s.dot(y - x) - f.value(y));
    }
  }
  return {"oracle.subgradient_inequality", worst <= 1e-12,
          "max violation " + sci(worst)};
}

CheckResult check_convexity_sampling(Rng& rng, int triples) {
  std::vector<FunctionOracle> oracles;
  oracles.push_back(FunctionOracle::l1_norm(4));
  oracles.push_back(FunctionOracle::dist_to_disc_squared(2));
  oracles.push_back(FunctionOracle::squared_distance(random_vector(rng, 3, 1.0)));
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (const FunctionOracle& f : oracles) {
    for (int t = 0; t < triples; ++t) {
      Vector x = random_vector(rng, f.dimension(), 2.0);
      Vector y = random_vector(rng, f.dimension(), 2.0);
      double lam = u01(rng);
      double lhs = f.value(lam * x + (1.0 - lam) * y);
      worst = std::max(worst, lhs - lam * f.value(x) - (1.0 - lam) * f.value(y));
    }
  }
  return {"oracle.convexity", worst <= 1e-12, "max violation " + sci(worst)};
}

CheckResult check_disc_c1(Rng& rng) {
  FunctionOracle g = FunctionOracle::dist_to_disc_squared(2);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    double th = angle(rng);
    Vector dir(2);
    dir << std::cos(th), std::sin(th);
    for (double r : {1.0 + 1e-4, 1.0 + 1e-6, 1.0 + 1e-8}) {
      worst = std::max(worst, g.gradient(r * dir).norm() / (r - 1.0));
    }
  }
  // |grad| = 2(r-1) just outside the circle, so the ratio stays ~2
  return {"oracle.disc_c1", worst <= 2.0 + 1e-6, "max |grad|/(r-1) " + sci(worst)};
}

CheckResult check_lower_sign(Rng& rng, int trials) {
  ProblemInstance p51 = make_ex51();
  ProblemInstance p54 = make_ex54(Vector::Constant(8, 0.125));
  std::uniform_real_distribution<double> logbeta(-4.0, 4.0);
  double worst = -1e300;
  for (int t = 0; t < trials; ++t) {
    const ProblemInstance& p = (t % 2 == 0) ? p51 : p54;
    Vector x = p.C.project(random_vector(rng, p.C.dimension(), 2.0));
    LowerStepOptions opts;
    opts.beta = std::pow(10.0, logbeta(rng));
    LowerStepResult r = lower_level_step(p.g, p.C, x, opts);
    worst = std::max(worst, r.dir_deriv);
  }
  return {"lower.sign", worst <= 1e-12, "max dir_deriv " + sci(worst)};
}

CheckResult check_armijo_descent_minimality(Rng& rng, int trials) {
  ProblemInstance p = make_ex51();
  const double sigma = 0.1;
  bool ok = true;
  std::string detail = "descent and minimality hold";
  for (int t = 0; t < trials && ok; ++t) {
    Vector x = p.C.project(random_vector(rng, 2, 2.0));
    LowerStepOptions opts;
    opts.sigma = sigma;
    LowerStepResult r = lower_level_step(p.g, p.C, x, opts);
    if (r.stationary) continue;
    double gx = p.g.value(x);
    if (!(r.alpha_k < gx + sigma * r.gamma_k * r.dir_deriv && r.alpha_k < gx)) {
      ok = false;
      detail = "strict descent violated";
      break;
    }
    // minimality: every smaller exponent must fail the inequality
    for (int j = 0; j < r.l_k; ++j) {
      double gamma = std::pow(2.0, -j);
      Vector y = x + gamma * (r.z_k - x);
      if (p.g.value(y) < gx + sigma * gamma * r.dir_deriv) {
        ok = false;
        detail = "accepted exponent not minimal";
        break;
      }
    }
    // doubling the cap must not change a successful result
    LowerStepOptions wide = opts;
    wide.max_backtracks = opts.max_backtracks * 2;
    LowerStepResult r2 = lower_level_step(p.g, p.C, x, wide);
    if (r2.l_k != r.l_k || !exactly_equal(r2.y_k, r.y_k)) {
      ok = false;
      detail = "result changed with a larger backtrack cap";
    }
  }
  return {"lower.descent_minimality", ok, detail};
}

CheckResult check_lemma34_synthetic(Rng& rng, int sequences) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst_tail = 0.0;
  for (int s = 0; s < sequences; ++s) {
    double alpha = 10.0 * u01(rng);
    double eta0 = 0.1 + 0.9 * u01(rng);
    double decay = 0.9 + 0.09 * u01(rng);
    double eta = eta0;
    const int n = 4000;
    double tail = 0.0;
    for (int k = 0; k < n; ++k) {
      double up = eta * u01(rng);
      double d = u01(rng) * std::max(0.0, alpha + up);  // keeps alpha >= 0
      double next = alpha + up - d;
      if (k >= 3 * n / 4) tail = std::max(tail, std::abs(next - alpha));
      alpha = next;
      eta *= decay;
    }
    worst_tail = std::max(worst_tail, tail);
  }
  return {"lemma.summable_perturbation", worst_tail < 1e-8,
          "max tail increment " + sci(worst_tail)};
}

CheckResult check_inner_grid_equivalence() {
  double worst = 0.0;
  {
    ProblemInstance p = make_ex51();
    for (double tau : {0.01, 0.001}) {
      InnerProblem ip{p.f, p.g, p.C, tau, 1e-8, 50000, 1e-9};
      InnerResult r = solve_inner(ip, p.C.project(Vector::Zero(2)));
      double oracle = grid_oracle_2d(p.f, p.g, p.C, tau);
      worst = std::max(worst, std::abs(r.f_val - oracle));
    }
  }
  {
    Vector a(2);
    a << 2.0, 3.0;
    ProblemInstance p = make_ex53(a);
    for (double tau : {0.01, 0.001}) {
      InnerProblem ip{p.f, p.g, p.C, tau, 1e-8, 50000, 1e-9};
      InnerResult r = solve_inner(ip, p.C.project(Vector::Zero(2)));
      double oracle = grid_oracle_2d(p.f, p.g, p.C, tau);
      worst = std::max(worst, std::abs(r.f_val - oracle));
    }
  }
  return {"inner.grid_equivalence", worst <= 1e-3, "max |f - grid| " + sci(worst)};
}

CheckResult check_alpha_recursion_quick() {
  ProblemInstance p = make_ex51();
  SolverConfig cfg = experiment_config(ExperimentId::Ex51);
  SolveResult r = solve(p, cfg);
  bool ok = r.termination == Termination::CriterionMet;
  double worst = -1e300;
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    double lhs = r.trace[i].lower.alpha_k;
    double rhs = r.trace[i - 1].lower.alpha_k + r.trace[i - 1].eta_k;
    worst = std::max(worst, lhs - rhs);
  }
  ok = ok && (r.trace.size() < 2 || worst <= 1e-9);
  return {"solver.alpha_recursion", ok, "max excess " + sci(worst)};
}

}  // namespace

double grid_oracle_2d(const FunctionOracle& f, const FunctionOracle& g,
                      const FeasibleSet& C, double tau, Vector* argmin) {
  if (C.dimension() != 2) throw DimensionMismatch(2, C.dimension());
  double cx = 0.0, cy = 0.0, half = 6.0;
  double best = std::numeric_limits<double>::infinity();
  Vector best_p(2);
  for (int stage = 0; stage < 5; ++stage) {
    const int cells = 120;
    double step = 2.0 * half / cells;
    double stage_best = std::numeric_limits<double>::infinity();
    double bx = cx, by = cy;
    Vector p(2);
    for (int i = 0; i <= cells; ++i) {
      for (int j = 0; j <= cells; ++j) {
        p(0) = cx - half + step * i;
        p(1) = cy - half + step * j;
        if (!C.contains(p, 0.0) || g.value(p) > tau) continue;
        double v = f.value(p);
        if (v < stage_best) {
          stage_best = v;
          bx = p(0);
          by = p(1);
        }
      }
    }
    if (stage_best < best) {
      best = stage_best;
      best_p << bx, by;
    }
    cx = bx;
    cy = by;
    half = 2.5 * step;
  }
  if (argmin) *argmin = best_p;
  return best;
}

std::vector<CheckResult> run_property_suites(unsigned seed) {
  Rng rng(seed);
  std::vector<CheckResult> out;
  out.push_back(check_projection_idempotence(rng, 1000));
  out.push_back(check_projection_nonexpansive(rng, 1000));
  out.push_back(check_projection_variational(rng, 1000));
  out.push_back(check_projection_fixed_point(rng, 1000));
  out.push_back(check_gradients_fd(rng, 100));
  out.push_back(check_subgradient_inequality(rng, 1000));
  out.push_back(check_convexity_sampling(rng, 1000));
  out.push_back(check_disc_c1(rng));
  out.push_back(check_lower_sign(rng, 1000));
  out.push_back(check_armijo_descent_minimality(rng, 500));
  out.push_back(check_lemma34_synthetic(rng, 100));
  out.push_back(check_inner_grid_equivalence());
  out.push_back(check_alpha_recursion_quick());
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace sbp
