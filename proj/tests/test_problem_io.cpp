#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "sbp/experiments.hpp"
#include "sbp/problem_io.hpp"

namespace {

using sbp::LoadedProblem;
using sbp::Matrix;
using sbp::Vector;

std::filesystem::path data_dir() { return SBP_DATA_DIR; }

TEST(ProblemIo, LoadsBundledEx51) {
  LoadedProblem lp = sbp::load_problem(data_dir() / "ex51.json");
  EXPECT_EQ(lp.instance.name, "ex51");
  EXPECT_EQ(lp.instance.C.dimension(), 2);
  ASSERT_TRUE(lp.instance.known_lower_optimum.has_value());
  EXPECT_DOUBLE_EQ(*lp.instance.known_lower_optimum, 0.0);
  EXPECT_EQ(lp.defaults.criterion, sbp::StoppingCriterion::B);
  EXPECT_DOUBLE_EQ(lp.defaults.threshold_eps, 1e-5);

  // pointwise agreement with the built-in instance
  sbp::ProblemInstance builtin = sbp::make_ex51();
  std::mt19937_64 rng(17);
  std::normal_distribution<double> dist(0.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    Vector x(2);
    x << dist(rng), dist(rng);
    EXPECT_DOUBLE_EQ(lp.instance.f.value(x), builtin.f.value(x));
    EXPECT_DOUBLE_EQ(lp.instance.g.value(x), builtin.g.value(x));
    EXPECT_EQ(lp.instance.C.contains(x, 1e-9), builtin.C.contains(x, 1e-9));
  }
}

TEST(ProblemIo, LoadsBundledMarkowitz) {
  LoadedProblem lp = sbp::load_problem(data_dir() / "markowitz.json");
  EXPECT_EQ(lp.instance.C.dimension(), 8);
  EXPECT_DOUBLE_EQ(lp.defaults.threshold_eps, 1e-10);
  sbp::ProblemInstance builtin = sbp::make_ex54(Vector::Constant(8, 0.125));
  std::mt19937_64 rng(19);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    Vector x(8);
    for (int i = 0; i < 8; ++i) x(i) = dist(rng);
    EXPECT_NEAR(lp.instance.g.value(x), builtin.g.value(x), 1e-15);
    EXPECT_DOUBLE_EQ(lp.instance.f.value(x), builtin.f.value(x));
  }
  // the return constraint is inactive on the simplex: every vertex clears it
  for (int i = 0; i < 8; ++i) {
    Vector e = Vector::Zero(8);
    e(i) = 1.0;
    EXPECT_TRUE(lp.instance.C.contains(e, 1e-12));
  }
}

TEST(ProblemIo, AllBundledFilesLoadAndRoundTrip) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> dist(0.0, 2.0);
  for (const char* name :
       {"ex51.json", "ex52a.json", "ex52b.json", "ex52c.json", "ex53.json",
        "markowitz.json"}) {
    LoadedProblem lp = sbp::load_problem(data_dir() / name);
    LoadedProblem rt = sbp::parse_problem(sbp::problem_to_json(lp.instance));
    for (int t = 0; t < 100; ++t) {
      Vector x(lp.instance.C.dimension());
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = dist(rng);
      double f1 = lp.instance.f.value(x), f2 = rt.instance.f.value(x);
      double g1 = lp.instance.g.value(x), g2 = rt.instance.g.value(x);
      EXPECT_LE(std::abs(f1 - f2), 1e-15 * (1.0 + std::abs(f1))) << name;
      EXPECT_LE(std::abs(g1 - g2), 1e-15 * (1.0 + std::abs(g1))) << name;
    }
  }
}

TEST(ProblemIo, Ex52aDataFidelity) {
  // constants transcribed once from the source tables
  LoadedProblem lp = sbp::load_problem(data_dir() / "ex52a.json");
  const auto* ls = std::get_if<sbp::LeastSquares>(&lp.instance.g.variant());
  ASSERT_NE(ls, nullptr);
  Matrix expected(3, 4);
  expected << 1, 2, -3, 1, 3, -1, -2, -4, 2, 3, -5, 1;
  Vector rhs(3);
  rhs << -2, 1, -3;
  EXPECT_EQ((ls->a - expected).lpNorm<Eigen::Infinity>(), 0.0);
  EXPECT_EQ((ls->b - rhs).lpNorm<Eigen::Infinity>(), 0.0);
}

TEST(ProblemIo, Ex52bSystemIsConsistentWithItsReportedSolution) {
  // the bundled matrix reproduces the reported sparse solution; the sign
  // of entry (4,1) distinguishes it from the misprinted table
  LoadedProblem lp = sbp::load_problem(data_dir() / "ex52b.json");
  const auto* ls = std::get_if<sbp::LeastSquares>(&lp.instance.g.variant());
  ASSERT_NE(ls, nullptr);
  EXPECT_DOUBLE_EQ(ls->a(3, 0), 3.0);
  Vector xstar = Vector::Zero(15);
  xstar(0) = 0.3857;
  xstar(3) = 0.0506;
  xstar(4) = 0.6820;
  xstar(8) = -0.2233;
  xstar(14) = 1.2350;
  EXPECT_LE(lp.instance.g.value(xstar), 1e-6);
}

TEST(ProblemIo, MalformedJsonReportsByteOffset) {
  try {
    sbp::parse_problem("{\"name\": \"x\", ");
    FAIL() << "expected ParseError";
  } catch (const sbp::ParseError& e) {
    EXPECT_GT(e.byte(), 0u);
  }
}

TEST(ProblemIo, ValidationErrorsCarryFieldPaths) {
  const char* missing_g = R"({"name":"t","dimension":1,
    "f":{"type":"l1_norm","dimension":1},
    "C":{"type":"whole_space","dimension":1}})";
  EXPECT_THROW(sbp::parse_problem(missing_g), sbp::ValidationError);

  const char* bad_type = R"({"name":"t",
    "f":{"type":"nope"},
    "g":{"type":"l1_norm","dimension":1},
    "C":{"type":"whole_space","dimension":1}})";
  try {
    sbp::parse_problem(bad_type);
    FAIL() << "expected ValidationError";
  } catch (const sbp::ValidationError& e) {
    EXPECT_NE(e.field().find("f"), std::string::npos);
  }

  const char* indefinite = R"({"name":"t",
    "f":{"type":"l1_norm","dimension":2},
    "g":{"type":"quadratic_form","matrix":[[1.0,2.0],[2.0,1.0]]},
    "C":{"type":"whole_space","dimension":2}})";
  EXPECT_THROW(sbp::parse_problem(indefinite), sbp::ValidationError);

  const char* bad_box = R"({"name":"t",
    "f":{"type":"l1_norm","dimension":1},
    "g":{"type":"l1_norm","dimension":1},
    "C":{"type":"box","lower":[2.0],"upper":[1.0]}})";
  EXPECT_THROW(sbp::parse_problem(bad_box), sbp::ValidationError);

  const char* nonfinite = R"({"name":"t",
    "f":{"type":"linear","c":[1e999],"d":0.0},
    "g":{"type":"l1_norm","dimension":1},
    "C":{"type":"whole_space","dimension":1}})";
  EXPECT_THROW(sbp::parse_problem(nonfinite), sbp::ValidationError);
}

TEST(ProblemIo, DimensionFieldMustMatch) {
  const char* mismatched = R"({"name":"t","dimension":3,
    "f":{"type":"l1_norm","dimension":2},
    "g":{"type":"l1_norm","dimension":2},
    "C":{"type":"whole_space","dimension":2}})";
  EXPECT_THROW(sbp::parse_problem(mismatched), sbp::ValidationError);
}

TEST(ProblemIo, MissingFileIsAnIoError) {
  EXPECT_THROW(sbp::load_problem(data_dir() / "does_not_exist.json"), sbp::IoError);
}

}  // namespace
