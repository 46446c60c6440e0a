#include <gtest/gtest.h>

#include <cmath>

#include "sbp/baseline.hpp"
#include "sbp/experiments.hpp"

namespace {

using sbp::BaselineConfig;
using sbp::Vector;

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

TEST(Baseline, FirstIterateFromTheOrigin) {
  // with unit step and sigma_0 = 1 the first move is P_C(-(1,1)) = (-1,-1)
  sbp::ProblemInstance p = sbp::make_ex51();
  BaselineConfig cfg;
  sbp::SolveResult r = sbp::solve_baseline(p, cfg);
  ASSERT_GE(r.trace.size(), 2u);
  EXPECT_NEAR(r.trace[1].x_k(0), -1.0, 1e-12);
  EXPECT_NEAR(r.trace[1].x_k(1), -1.0, 1e-12);
}

TEST(Baseline, Ex51Convergence) {
  sbp::ProblemInstance p = sbp::make_ex51();
  BaselineConfig cfg;
  sbp::SolveResult r = sbp::solve_baseline(p, cfg);
  EXPECT_NEAR(r.x_star(0), -1.0 / std::sqrt(2.0), 5e-3);
  EXPECT_NEAR(r.x_star(1), -1.0 / std::sqrt(2.0), 5e-3);
  EXPECT_NEAR(r.f_star, -2.414, 5e-3);
}

TEST(Baseline, IteratesStayFeasible) {
  sbp::ProblemInstance p = sbp::make_ex51();
  BaselineConfig cfg;
  sbp::SolveResult r = sbp::solve_baseline(p, cfg);
  for (const sbp::IterationRecord& rec : r.trace)
    EXPECT_TRUE(p.C.contains(rec.x_k, 1e-9));
  EXPECT_TRUE(p.C.contains(r.x_star, 1e-9));
}

TEST(Baseline, TrivialLowerLevelReducesToConstrainedDescent) {
  // C inside the unit disc makes g identically zero there, so the
  // regularized path heads to the constrained minimum of f
  sbp::ProblemInstance p{sbp::FunctionOracle::linear(v2(1.0, 1.0), 0.0),
                         sbp::FunctionOracle::dist_to_disc_squared(2),
                         sbp::FeasibleSet::ball(Vector::Zero(2), 0.9), 0.0,
                         "trivial"};
  BaselineConfig cfg;
  sbp::SolveResult r = sbp::solve_baseline(p, cfg);
  double c = -0.9 / std::sqrt(2.0);
  EXPECT_NEAR(r.x_star(0), c, 1e-3);
  EXPECT_NEAR(r.x_star(1), c, 1e-3);
}

TEST(Baseline, NonsmoothUpperObjectiveIsRejected) {
  sbp::ProblemInstance p = sbp::make_ex52a();
  EXPECT_THROW(sbp::solve_baseline(p, BaselineConfig{}), sbp::NotSmooth);
}

TEST(Baseline, BadConfigThrows) {
  sbp::ProblemInstance p = sbp::make_ex51();
  BaselineConfig cfg;
  cfg.reg_base = 1.0;
  EXPECT_THROW(sbp::solve_baseline(p, cfg), sbp::InvalidConfig);
}

}  // namespace
