#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sbp/feasible_set.hpp"

namespace {

using sbp::FeasibleSet;
using sbp::Sense;
using sbp::Vector;

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

FeasibleSet disc_box() {
  return FeasibleSet::intersection(
      {FeasibleSet::ball(Vector::Zero(2), std::sqrt(2.0)),
       FeasibleSet::box(v2(-3.0, -3.0), v2(0.5, 0.5))});
}

TEST(FeasibleSet, BoxProjectionClamps) {
  FeasibleSet box = FeasibleSet::box(v2(-3.0, -3.0), v2(0.5, 0.5));
  Vector p = box.project(v2(2.0, -5.0));
  EXPECT_DOUBLE_EQ(p(0), 0.5);
  EXPECT_DOUBLE_EQ(p(1), -3.0);
}

TEST(FeasibleSet, BallProjectionScalesRadially) {
  FeasibleSet ball = FeasibleSet::ball(Vector::Zero(2), std::sqrt(2.0));
  Vector p = ball.project(v2(2.0, 2.0));
  EXPECT_NEAR(p(0), 1.0, 1e-14);
  EXPECT_NEAR(p(1), 1.0, 1e-14);
}

TEST(FeasibleSet, IntersectionProjectionOfOutsideCorner) {
  Vector p = disc_box().project(v2(2.0, 2.0));
  EXPECT_NEAR(p(0), 0.5, 1e-9);
  EXPECT_NEAR(p(1), 0.5, 1e-9);
}

TEST(FeasibleSet, SimplexProjectionMatchesBruteForce) {
  FeasibleSet simplex = FeasibleSet::simplex(2, 1.0);
  Vector p = simplex.project(v2(1.2, -0.3));
  EXPECT_NEAR(p(0), 1.0, 1e-12);
  EXPECT_NEAR(p(1), 0.0, 1e-12);

  // brute-force oracle: scan the segment {(t, 1-t): t in [0,1]}
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    Vector q = v2(u(rng), u(rng));
    Vector proj = simplex.project(q);
    double best = 1e300;
    for (int i = 0; i <= 200000; ++i) {
      double t = static_cast<double>(i) / 200000.0;
      best = std::min(best, (q - v2(t, 1.0 - t)).squaredNorm());
    }
    EXPECT_LE((q - proj).squaredNorm(), best + 1e-9);
  }
}

TEST(FeasibleSet, HalfspaceProjection) {
  FeasibleSet hs = FeasibleSet::halfspace(v2(1.0, 1.0), 5.0, Sense::LessEqual);
  Vector p = hs.project(v2(4.0, 4.0));
  EXPECT_NEAR(p(0), 2.5, 1e-14);
  EXPECT_NEAR(p(1), 2.5, 1e-14);
  // points on the feasible side are untouched
  Vector q = v2(1.0, 2.0);
  EXPECT_EQ((hs.project(q) - q).norm(), 0.0);
}

TEST(FeasibleSet, GreaterEqualHalfspace) {
  FeasibleSet hs = FeasibleSet::halfspace(v2(0.0, 1.0), 1.0, Sense::GreaterEqual);
  Vector p = hs.project(v2(3.0, 0.0));
  EXPECT_NEAR(p(0), 3.0, 1e-14);
  EXPECT_NEAR(p(1), 1.0, 1e-14);
}

TEST(FeasibleSet, Contains) {
  EXPECT_TRUE(FeasibleSet::ball(Vector::Zero(2), std::sqrt(2.0)).contains(v2(1.0, 1.0), 1e-9));
  EXPECT_FALSE(
      FeasibleSet::box(v2(-3.0, -3.0), v2(0.5, 0.5)).contains(v2(0.6, 0.0), 1e-9));
  EXPECT_TRUE(FeasibleSet::simplex(8, 1.0).contains(Vector::Constant(8, 0.125), 1e-12));
}

TEST(FeasibleSet, DimensionMismatchThrows) {
  FeasibleSet box = FeasibleSet::box(v2(-1.0, -1.0), v2(1.0, 1.0));
  Vector p(3);
  p << 0, 0, 0;
  EXPECT_THROW(box.project(p), sbp::DimensionMismatch);
  EXPECT_THROW(box.contains(p, 0.0), sbp::DimensionMismatch);
}

TEST(FeasibleSet, InvariantViolationsThrow) {
  EXPECT_THROW(FeasibleSet::box(v2(1.0, 1.0), v2(0.0, 0.0)), sbp::ValidationError);
  EXPECT_THROW(FeasibleSet::ball(Vector::Zero(2), -1.0), sbp::ValidationError);
  EXPECT_THROW(FeasibleSet::halfspace(Vector::Zero(2), 1.0, Sense::LessEqual),
               sbp::ValidationError);
  EXPECT_THROW(FeasibleSet::intersection(
                   {FeasibleSet::whole_space(2), FeasibleSet::whole_space(3)}),
               sbp::DimensionMismatch);
}

TEST(FeasibleSet, EmptyIntersectionFailsProbe) {
  FeasibleSet empty = FeasibleSet::intersection(
      {FeasibleSet::ball(Vector::Zero(2), 1.0), FeasibleSet::ball(v2(10.0, 0.0), 1.0)});
  EXPECT_THROW(empty.feasibility_probe(), sbp::Error);
}

TEST(FeasibleSet, DykstraFindsNearestPointNotJustFeasible) {
  // both the ball and the box face are active at the solution
  FeasibleSet set = disc_box();
  Vector p = v2(-2344.09, 6201.89);
  Vector x = set.project(p);
  EXPECT_NEAR(x(1), 0.5, 1e-7);
  EXPECT_NEAR(x.norm(), std::sqrt(2.0), 1e-7);
  // grid oracle over the intersection
  double best = 1e300;
  Vector q(2), bestq(2);
  for (int i = 0; i <= 2000; ++i) {
    for (int j = 0; j <= 2000; ++j) {
      q << -3.0 + 3.5 * i / 2000.0, -3.0 + 3.5 * j / 2000.0;
      if (!set.contains(q, 0.0)) continue;
      double d = (p - q).squaredNorm();
      if (d < best) {
        best = d;
        bestq = q;
      }
    }
  }
  EXPECT_NEAR(x(0), bestq(0), 5e-3);
  EXPECT_NEAR(x(1), bestq(1), 5e-3);
}

TEST(FeasibleSet, ProjectionIdempotentAndNonexpansive) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist(0.0, 2.0);
  FeasibleSet set = disc_box();
  for (int t = 0; t < 200; ++t) {
    Vector p = v2(dist(rng), dist(rng));
    Vector q = v2(dist(rng), dist(rng));
    Vector pp = set.project(p);
    EXPECT_LE((set.project(pp) - pp).norm(), 1e-9);
    EXPECT_LE((pp - set.project(q)).norm(), (p - q).norm() + 1e-9);
  }
}

}  // namespace
