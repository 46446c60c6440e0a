// Command line front end: solve a problem file, reproduce the bundled
// experiment families, or run the property suites.
//
// Exit codes: 0 success, 1 solver failure, 2 input error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "sbp/baseline.hpp"
#include "sbp/experiments.hpp"
#include "sbp/problem_io.hpp"
#include "sbp/report.hpp"
#include "sbp/selfcheck.hpp"

namespace {

using sbp::Vector;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string vec_str(const Vector& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v(i));
    if (i) out += ", ";
    out += buf;
  }
  return out + ")";
}

void write_trace(const sbp::SolveResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw sbp::IoError("cannot write " + path);
  for (const sbp::IterationRecord& rec : result.trace) {
    nlohmann::ordered_json j;
    j["k"] = rec.k;
    j["x"] = std::vector<double>(rec.x_k.data(), rec.x_k.data() + rec.x_k.size());
    j["z"] = std::vector<double>(rec.lower.z_k.data(),
                                 rec.lower.z_k.data() + rec.lower.z_k.size());
    j["stationary"] = rec.lower.stationary;
    j["gamma"] = rec.lower.gamma_k;
    j["l"] = rec.lower.l_k;
    j["y"] = std::vector<double>(rec.lower.y_k.data(),
                                 rec.lower.y_k.data() + rec.lower.y_k.size());
    j["alpha"] = rec.lower.alpha_k;
    j["dir_deriv"] = rec.lower.dir_deriv;
    j["eta"] = rec.eta_k;
    j["tau"] = rec.tau_k;
    j["inner"] = {{"iterations", rec.inner.iterations},
                  {"f", rec.inner.f_val},
                  {"g", rec.inner.g_val}};
    out << j.dump() << '\n';
  }
}

int print_result(const sbp::SolveResult& r) {
  std::cout << "termination : "
            << (r.termination == sbp::Termination::CriterionMet ? "criterion met"
                : r.termination == sbp::Termination::MaxOuter   ? "outer iteration cap"
                                                                : "error: " + r.error)
            << "\n";
  if (r.termination == sbp::Termination::Error) return 1;
  std::cout << "x*          : " << vec_str(r.x_star) << "\n"
            << "f(x*)       : " << fmt(r.f_star) << "\n"
            << "g(x*)       : " << fmt(r.g_star) << "\n"
            << "alpha_final : " << fmt(r.alpha_final) << "\n"
            << "iterations  : " << r.outer_iterations << "\n"
            << "wall time   : " << fmt(r.wall_time_sec) << " s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for simple bilevel programs: minimize a convex f over "
               "the solution set of a smooth convex lower-level problem"};
  app.require_subcommand(1);

  // --- solve ---
  std::string problem_path, trace_path, x0_str;
  double eps = 0.0, eta_base = 0.0, sigma = 0.0, beta = 0.0;
  std::string criterion;
  int max_outer = 0;
  long inner_budget = 0;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a problem JSON file");
  solve_cmd->add_option("problem", problem_path, "Problem file")->required();
  solve_cmd->add_option("--eps", eps, "Stopping threshold");
  solve_cmd->add_option("--eta-base", eta_base, "Slack schedule base (eta_k = base^-k)");
  solve_cmd->add_option("--criterion", criterion, "Stopping criterion: A or B");
  solve_cmd->add_option("--trace", trace_path, "Write per-iteration JSONL trace");
  solve_cmd->add_option("--max-outer", max_outer, "Outer iteration cap");
  solve_cmd->add_option("--inner-budget", inner_budget, "Inner iteration budget");
  solve_cmd->add_option("--sigma", sigma, "Descent fraction in (0,1)");
  solve_cmd->add_option("--beta", beta, "Projected-gradient step scale");
  solve_cmd->add_option("--x0", x0_str, "Initial point, comma separated");

  // --- reproduce ---
  std::string experiment_id, format_str = "markdown", out_path;
  bool with_baseline = false;
  CLI::App* rep_cmd = app.add_subcommand("reproduce", "Run a bundled experiment family");
  rep_cmd->add_option("id", experiment_id, "5.1 | 5.2a | 5.2b | 5.2c | 5.3 | 5.4 | all")
      ->required();
  rep_cmd->add_flag("--baseline", with_baseline, "Also run the explicit-descent baseline");
  rep_cmd->add_option("--format", format_str, "csv | json | markdown");
  rep_cmd->add_option("--out", out_path, "Output path (stdout if omitted)");

  // --- check ---
  unsigned seed = 7;
  CLI::App* check_cmd = app.add_subcommand("check", "Run the property suites");
  check_cmd->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve_cmd) {
      sbp::LoadedProblem loaded = sbp::load_problem(problem_path);
      sbp::SolverConfig cfg = loaded.defaults;
      if (eps > 0.0) cfg.threshold_eps = eps;
      if (eta_base > 0.0) cfg.eta_schedule.base = eta_base;
      if (!criterion.empty()) {
        if (criterion != "A" && criterion != "B")
          throw sbp::InvalidConfig("criterion must be A or B");
        cfg.criterion =
            criterion == "A" ? sbp::StoppingCriterion::A : sbp::StoppingCriterion::B;
      }
      if (max_outer > 0) cfg.max_outer = max_outer;
      if (inner_budget > 0) cfg.inner_budget = inner_budget;
      if (sigma > 0.0) cfg.sigma = sigma;
      if (beta > 0.0) cfg.beta = beta;
      if (!x0_str.empty()) {
        std::vector<double> vals;
        std::stringstream ss(x0_str);
        std::string tok;
        while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
        cfg.x0 = Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
      }
      std::cout << "problem     : " << loaded.instance.name << "\n";
      sbp::SolveResult r = sbp::solve(loaded.instance, cfg);
      if (!trace_path.empty()) write_trace(r, trace_path);
      return print_result(r);
    }

    if (*rep_cmd) {
      std::vector<sbp::ExperimentId> ids;
      if (experiment_id == "all") {
        ids = {sbp::ExperimentId::Ex51, sbp::ExperimentId::Ex52a, sbp::ExperimentId::Ex52b,
               sbp::ExperimentId::Ex52c, sbp::ExperimentId::Ex53, sbp::ExperimentId::Ex54};
      } else {
        ids = {sbp::parse_experiment_id(experiment_id)};
      }
      sbp::RunOptions opts;
      opts.include_baseline = with_baseline;
      std::vector<sbp::ReportRow> rows;
      for (sbp::ExperimentId id : ids) {
        std::vector<sbp::ReportRow> part =
            sbp::run_experiment(id, sbp::default_sweep(id), sbp::default_anchors(id), opts);
        for (sbp::ReportRow& row : part) {
          row.anchor_label = sbp::experiment_name(id) +
                             (row.anchor_label.empty() ? "" : " a=" + row.anchor_label);
          rows.push_back(std::move(row));
        }
      }
      sbp::ReportFormat format = sbp::parse_report_format(format_str);
      if (out_path.empty()) {
        sbp::emit_report(rows, format, std::cout);
      } else {
        sbp::emit_report(rows, format, std::filesystem::path(out_path));
        std::cout << "wrote " << out_path << "\n";
      }
      return 0;
    }

    if (*check_cmd) {
      std::vector<sbp::CheckResult> results = sbp::run_property_suites(seed);
      bool ok = true;
      for (const sbp::CheckResult& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " — " << r.detail
                  << "\n";
        ok = ok && r.passed;
      }
      return ok ? 0 : 1;
    }
  } catch (const sbp::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sbp::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sbp::UnknownExperiment& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sbp::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sbp::InvalidConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sbp::Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
