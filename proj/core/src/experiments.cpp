#include "sbp/experiments.hpp"

#include <cmath>
#include <sstream>

#include "sbp/baseline.hpp"

namespace sbp {

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

std::string format_anchor(const Vector& a) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i) os << " ";
    os << a(i);
  }
  os << ")";
  return os.str();
}

}  // namespace

ExperimentId parse_experiment_id(const std::string& id) {
  if (id == "5.1") return ExperimentId::Ex51;
  if (id == "5.2a" || id == "5.2i") return ExperimentId::Ex52a;
  if (id == "5.2b" || id == "5.2ii") return ExperimentId::Ex52b;
  if (id == "5.2c" || id == "5.2iii") return ExperimentId::Ex52c;
  if (id == "5.3") return ExperimentId::Ex53;
  if (id == "5.4") return ExperimentId::Ex54;
  throw UnknownExperiment(id);
}

std::string experiment_name(ExperimentId id) {
  switch (id) {
    case ExperimentId::Ex51: return "5.1";
    case ExperimentId::Ex52a: return "5.2a";
    case ExperimentId::Ex52b: return "5.2b";
    case ExperimentId::Ex52c: return "5.2c";
    case ExperimentId::Ex53: return "5.3";
    case ExperimentId::Ex54: return "5.4";
  }
  throw UnknownExperiment("?");
}

ProblemInstance make_ex51() {
  FeasibleSet c = FeasibleSet::intersection(
      {FeasibleSet::ball(Vector::Zero(2), std::sqrt(2.0)),
       FeasibleSet::box(vec({-3.0, -3.0}), vec({0.5, 0.5}))});
  return ProblemInstance{FunctionOracle::linear(vec({1.0, 1.0}), -1.0),
                         FunctionOracle::dist_to_disc_squared(2), std::move(c), 0.0,
                         "ex51"};
}

ProblemInstance make_ex52a() {
  Matrix a(3, 4);
  a << 1, 2, -3, 1,
       3, -1, -2, -4,
       2, 3, -5, 1;
  return ProblemInstance{FunctionOracle::l1_norm(4),
                         FunctionOracle::least_squares(a, vec({-2.0, 1.0, -3.0})),
                         FeasibleSet::whole_space(4), 0.0, "ex52a"};
}

ProblemInstance make_ex52b() {
  Matrix a(5, 15);
  // Row 4, column 1 carries +3: the sign printed in the source table is
  // inconsistent with the reported solution, which satisfies this system.
  a <<  3,  1,  2, -1,  1,  1, -2,  1, -2, -3,  1, -1,  2, -1, -1,
        1, -2, -1,  1,  2, -1, -1, -2, -3,  2,  1, -5, -1,  1, -2,
       -2, -1,  1, -1,  1, -1,  2,  1, -3,  1,  2,  2,  3,  2,  2,
        3, -1,  1,  2, -5, -6,  7, -1, -2, -3,  1, -2,  3,  1,  3,
        4, -1,  2,  4,  5, -1, -2,  1, -3,  1, -1, -2, -3,  4,  5;
  return ProblemInstance{FunctionOracle::l1_norm(15),
                         FunctionOracle::least_squares(a, vec({1.0, 0.0, 3.0, 2.0, 12.0})),
                         FeasibleSet::whole_space(15), 0.0, "ex52b"};
}

ProblemInstance make_ex52c() {
  Matrix a(10, 3);
  a <<  2,  1, -1,
        0,  2,  1,
       -1,  2,  0,
       -2, -1,  2,
        1,  3, -3,
        3, -1,  0,
       -3,  1, -2,
        1, -4,  1,
        5,  2, -1,
        4,  0, -3;
  return ProblemInstance{
      FunctionOracle::l1_norm(3),
      FunctionOracle::least_squares(a, vec({0.0, 2.0, 3.0, 1.0, 0.0, 2.0, 4.0, -2.0, 5.0, 2.0})),
      FeasibleSet::whole_space(3), std::nullopt, "ex52c"};
}

ProblemInstance make_ex53(const Vector& anchor) {
  std::vector<AffinePiece> pieces{{vec({1.0, 0.0}), -2.0},
                                  {vec({0.0, 0.0}), 0.0},
                                  {vec({0.0, 1.0}), -2.0}};
  FeasibleSet c = FeasibleSet::intersection(
      {FeasibleSet::halfspace(vec({1.0, 1.0}), 5.0, Sense::LessEqual),
       FeasibleSet::ball(Vector::Zero(2), 5.0)});
  return ProblemInstance{FunctionOracle::squared_distance(anchor),
                         FunctionOracle::max_of_affine(std::move(pieces)), std::move(c),
                         0.0, "ex53"};
}

ProblemInstance make_ex54(const Vector& anchor) {
  Matrix a(8, 8);
  a <<  0.0009, -0.0001,  0.0001,  0.0001, -0.0003,  0.0003, -0.0013,  0.0008,
       -0.0001,  0.0232,  0.0113,  0.0106,  0.0118,  0.0115,  0.0110, -0.0141,
        0.0001,  0.0113,  0.0283,  0.0297,  0.0329,  0.0075,  0.0219, -0.0185,
        0.0001,  0.0106,  0.0297,  0.0319,  0.0371,  0.0071,  0.0231, -0.0166,
       -0.0003,  0.0118,  0.0329,  0.0371,  0.0500,  0.0076,  0.0245, -0.0164,
        0.0003,  0.0115,  0.0075,  0.0071,  0.0076,  0.0065,  0.0044, -0.0115,
       -0.0013,  0.0110,  0.0219,  0.0231,  0.0245,  0.0044,  0.0554, -0.0140,
        0.0008, -0.0141, -0.0185, -0.0166, -0.0164, -0.0115, -0.0140,  0.1271;
  Vector mu = vec({1.0630, 1.0633, 1.0670, 1.0853, 1.0882, 1.0778, 1.0820, 1.1605});
  FeasibleSet c = FeasibleSet::intersection(
      {FeasibleSet::simplex(8, 1.0),
       FeasibleSet::halfspace(std::move(mu), 0.05, Sense::GreaterEqual)});
  return ProblemInstance{FunctionOracle::squared_distance(anchor),
                         FunctionOracle::quadratic_form(std::move(a)), std::move(c),
                         std::nullopt, "markowitz"};
}

SolverConfig experiment_config(ExperimentId id) {
  SolverConfig cfg;
  switch (id) {
    case ExperimentId::Ex51:
      cfg.criterion = StoppingCriterion::B;
      cfg.threshold_eps = 1e-5;
      break;
    case ExperimentId::Ex52a:
    case ExperimentId::Ex52b:
      cfg.criterion = StoppingCriterion::A;  // lower optimum 0 is known
      cfg.threshold_eps = 1e-5;
      break;
    case ExperimentId::Ex52c:
      cfg.criterion = StoppingCriterion::B;
      cfg.threshold_eps = 1e-5;
      break;
    case ExperimentId::Ex53:
      cfg.criterion = StoppingCriterion::A;
      cfg.threshold_eps = 1e-5;
      break;
    case ExperimentId::Ex54:
      cfg.criterion = StoppingCriterion::B;
      cfg.threshold_eps = 1e-10;
      break;
  }
  return cfg;
}

std::vector<SweepEntry> default_sweep(ExperimentId id) {
  switch (id) {
    case ExperimentId::Ex51:
      return {{1e-5, 10}, {1e-5, 100}, {1e-5, 1000},
              {1e-7, 10}, {1e-7, 100}, {1e-7, 1000}};
    case ExperimentId::Ex52a:
    case ExperimentId::Ex52b:
      return {{1e-5, 10}, {1e-5, 100}, {1e-5, 1000},
              {1e-7, 10}, {1e-7, 100}, {1e-7, 1000}};
    case ExperimentId::Ex52c:
      return {{1e-5, 10}, {1e-5, 100}, {1e-5, 1000}};
    case ExperimentId::Ex53:
      return {{1e-5, 10}, {1e-5, 100}, {1e-7, 10}, {1e-7, 100}};
    case ExperimentId::Ex54:
      return {{1e-10, 100}};
  }
  return {};
}

std::vector<Vector> default_anchors(ExperimentId id) {
  switch (id) {
    case ExperimentId::Ex53:
      return {vec({0.0, -3.0}), vec({2.0, 3.0}), vec({0.0, 3.0})};
    case ExperimentId::Ex54: {
      Vector e1 = Vector::Zero(8);
      e1(0) = 1.0;
      Vector half = Vector::Zero(8);
      half(0) = half(1) = 0.5;
      Vector uniform = Vector::Constant(8, 0.125);
      Vector two = Vector::Zero(8);
      two(1) = two(7) = 0.5;
      return {e1, half, uniform, two};
    }
    default:
      return {};
  }
}

std::vector<ReportRow> run_experiment(ExperimentId id, const std::vector<SweepEntry>& sweep,
                                      const std::vector<Vector>& anchors,
                                      const RunOptions& options) {
  const bool anchored = id == ExperimentId::Ex53 || id == ExperimentId::Ex54;
  std::vector<Vector> anchor_list = anchors;
  if (anchored && anchor_list.empty()) anchor_list = default_anchors(id);
  if (!anchored) anchor_list = {Vector()};

  std::vector<ReportRow> rows;
  for (const Vector& anchor : anchor_list) {
    ProblemInstance problem = [&] {
      switch (id) {
        case ExperimentId::Ex51: return make_ex51();
        case ExperimentId::Ex52a: return make_ex52a();
        case ExperimentId::Ex52b: return make_ex52b();
        case ExperimentId::Ex52c: return make_ex52c();
        case ExperimentId::Ex53: return make_ex53(anchor);
        case ExperimentId::Ex54: return make_ex54(anchor);
      }
      throw UnknownExperiment("?");
    }();

    for (const SweepEntry& entry : sweep) {
      SolverConfig cfg = experiment_config(id);
      cfg.threshold_eps = entry.threshold_eps;
      cfg.eta_schedule.base = entry.eta_base;
      SolveResult r = solve(problem, cfg);

      ReportRow row;
      row.threshold_eps = entry.threshold_eps;
      row.eta_base = entry.eta_base;
      row.algorithm = "sbp";
      row.anchor_label = anchored ? format_anchor(anchor) : "";
      row.solution = r.x_star;
      row.upper_value = r.f_star;
      row.lower_value = r.g_star;
      if (anchored) row.distance = (r.x_star - anchor).norm();
      row.outer_iterations = r.outer_iterations;
      row.wall_time_sec = r.wall_time_sec;
      rows.push_back(std::move(row));
    }

    if (options.include_baseline && problem.f.smooth()) {
      BaselineConfig bcfg;
      for (const SweepEntry& entry : sweep) {
        bcfg.eps = entry.threshold_eps;
        SolveResult r = solve_baseline(problem, bcfg);
        ReportRow row;
        row.threshold_eps = entry.threshold_eps;
        row.eta_base = entry.eta_base;
        row.algorithm = "baseline";
        row.anchor_label = anchored ? format_anchor(anchor) : "";
        row.solution = r.x_star;
        row.upper_value = r.f_star;
        row.lower_value = r.g_star;
        if (anchored) row.distance = (r.x_star - anchor).norm();
        row.outer_iterations = r.outer_iterations;
        row.wall_time_sec = r.wall_time_sec;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace sbp
