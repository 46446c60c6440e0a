#pragma once

#include <limits>
#include <string>
#include <vector>

#include "sbp/solver.hpp"

namespace sbp {

enum class ExperimentId { Ex51, Ex52a, Ex52b, Ex52c, Ex53, Ex54 };

/// Accepts "5.1", "5.2a", "5.2b", "5.2c", "5.3", "5.4"; throws
/// UnknownExperiment otherwise.
ExperimentId parse_experiment_id(const std::string& id);
std::string experiment_name(ExperimentId id);

/// Builders for the bundled instances. Anchored families take the upper
/// objective's anchor point.
ProblemInstance make_ex51();
ProblemInstance make_ex52a();
ProblemInstance make_ex52b();
ProblemInstance make_ex52c();
ProblemInstance make_ex53(const Vector& anchor);
ProblemInstance make_ex54(const Vector& anchor);

/// Per-family solver defaults (criterion, threshold) used by the
/// reproduction runs.
SolverConfig experiment_config(ExperimentId id);

struct SweepEntry {
  double threshold_eps;
  double eta_base;
};

std::vector<SweepEntry> default_sweep(ExperimentId id);
std::vector<Vector> default_anchors(ExperimentId id);

/// One table row of a reproduction run.
struct ReportRow {
  double threshold_eps = 0.0;
  double eta_base = 0.0;
  std::string algorithm;     ///< "sbp" or "baseline"
  std::string anchor_label;  ///< empty for un-anchored families
  Vector solution;
  double upper_value = 0.0;
  double lower_value = 0.0;
  double distance = std::numeric_limits<double>::quiet_NaN();  ///< anchored families
  int outer_iterations = 0;
  double wall_time_sec = 0.0;
};

struct RunOptions {
  bool include_baseline = false;
};

/// Runs one experiment family over the sweep (crossed with anchors where
/// the family takes them) and returns one row per run, deterministically
/// ordered. Values come straight from solve().
std::vector<ReportRow> run_experiment(ExperimentId id, const std::vector<SweepEntry>& sweep,
                                      const std::vector<Vector>& anchors = {},
                                      const RunOptions& options = {});

}  // namespace sbp
