#pragma once

#include <filesystem>

#include "sbp/solver.hpp"

namespace sbp {

/// A problem document plus any solver defaults it carries.
///
/// Schema (JSON object):
///   name: string
///   dimension: integer
///   f, g: oracle objects, {"type": ..., ...data}
///     linear{c,d} | quadratic_form{matrix} | least_squares{matrix,rhs} |
///     squared_distance{anchor} | l1_norm{dimension} |
///     max_of_affine{pieces:[{c,d},...]} | dist_to_disc_squared{dimension}
///   C: set object, {"type": ..., ...data}
///     whole_space{dimension} | box{lower,upper} | ball{center,radius} |
///     halfspace{normal,offset,sense} | simplex{dimension,total} |
///     intersection{members:[...]}
///   known_lower_optimum: number (optional)
///   defaults: partial SolverConfig overrides (optional): eps, eta_base,
///     criterion ("A"|"B"), sigma, beta, max_outer, inner_budget,
///     inner_epsilon, feas_tol
/// Matrices are dense row-major arrays of rows; all numbers must be finite.
struct LoadedProblem {
  ProblemInstance instance;
  SolverConfig defaults;
};

/// Parses and validates a problem file: schema, dimension agreement, the
/// PSD check on quadratic forms and a feasibility probe of the set.
/// Throws ParseError (with byte offset) or ValidationError (with field path).
LoadedProblem load_problem(const std::filesystem::path& path);

LoadedProblem parse_problem(const std::string& text);

/// Serializes an instance back to the schema; load(save(p)) reproduces the
/// oracle evaluations exactly.
std::string problem_to_json(const ProblemInstance& instance);
void save_problem(const ProblemInstance& instance, const std::filesystem::path& path);

}  // namespace sbp
