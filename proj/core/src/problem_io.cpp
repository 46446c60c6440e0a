#include "sbp/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

namespace sbp {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ValidationError(field, what);
}

double finite_number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "number must be finite");
  return v;
}

Vector decode_vector(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = finite_number(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

Matrix decode_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  Vector first = decode_vector(j[0], field + "[0]");
  Matrix m(static_cast<Eigen::Index>(rows), first.size());
  m.row(0) = first;
  for (std::size_t r = 1; r < rows; ++r) {
    Vector row = decode_vector(j[r], field + "[" + std::to_string(r) + "]");
    if (row.size() != m.cols()) fail(field, "ragged rows");
    m.row(static_cast<Eigen::Index>(r)) = row;
  }
  return m;
}

std::string type_of(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    fail(field, "expected an object with a string 'type'");
  return j["type"].get<std::string>();
}

const json& member(const json& j, const char* key, const std::string& field) {
  if (!j.contains(key)) fail(field, std::string("missing key '") + key + "'");
  return j[key];
}

FunctionOracle decode_oracle(const json& j, const std::string& field) {
  const std::string type = type_of(j, field);
  try {
    if (type == "linear")
      return FunctionOracle::linear(decode_vector(member(j, "c", field), field + ".c"),
                                    finite_number(member(j, "d", field), field + ".d"));
    if (type == "quadratic_form")
      return FunctionOracle::quadratic_form(
          decode_matrix(member(j, "matrix", field), field + ".matrix"));
    if (type == "least_squares")
      return FunctionOracle::least_squares(
          decode_matrix(member(j, "matrix", field), field + ".matrix"),
          decode_vector(member(j, "rhs", field), field + ".rhs"));
    if (type == "squared_distance")
      return FunctionOracle::squared_distance(
          decode_vector(member(j, "anchor", field), field + ".anchor"));
    if (type == "l1_norm")
      return FunctionOracle::l1_norm(
          member(j, "dimension", field).get<Eigen::Index>());
    if (type == "max_of_affine") {
      const json& pieces = member(j, "pieces", field);
      if (!pieces.is_array() || pieces.empty()) fail(field + ".pieces", "expected pieces");
      std::vector<AffinePiece> ps;
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        std::string pf = field + ".pieces[" + std::to_string(i) + "]";
        ps.push_back(AffinePiece{decode_vector(member(pieces[i], "c", pf), pf + ".c"),
                                 finite_number(member(pieces[i], "d", pf), pf + ".d")});
      }
      return FunctionOracle::max_of_affine(std::move(ps));
    }
    if (type == "dist_to_disc_squared")
      return FunctionOracle::dist_to_disc_squared(
          member(j, "dimension", field).get<Eigen::Index>());
  } catch (const ValidationError& e) {
    throw ValidationError(e.field().empty() ? field : e.field(), e.what());
  }
  fail(field + ".type", "unknown oracle type '" + type + "'");
}

FeasibleSet decode_set(const json& j, const std::string& field) {
  const std::string type = type_of(j, field);
  try {
    if (type == "whole_space")
      return FeasibleSet::whole_space(member(j, "dimension", field).get<Eigen::Index>());
    if (type == "box")
      return FeasibleSet::box(decode_vector(member(j, "lower", field), field + ".lower"),
                              decode_vector(member(j, "upper", field), field + ".upper"));
    if (type == "ball")
      return FeasibleSet::ball(decode_vector(member(j, "center", field), field + ".center"),
                               finite_number(member(j, "radius", field), field + ".radius"));
    if (type == "halfspace") {
      std::string sense = member(j, "sense", field).get<std::string>();
      if (sense != "<=" && sense != ">=") fail(field + ".sense", "expected '<=' or '>='");
      return FeasibleSet::halfspace(
          decode_vector(member(j, "normal", field), field + ".normal"),
          finite_number(member(j, "offset", field), field + ".offset"),
          sense == "<=" ? Sense::LessEqual : Sense::GreaterEqual);
    }
    if (type == "simplex")
      return FeasibleSet::simplex(member(j, "dimension", field).get<Eigen::Index>(),
                                  finite_number(member(j, "total", field), field + ".total"));
    if (type == "intersection") {
      const json& members = member(j, "members", field);
      if (!members.is_array() || members.empty())
        fail(field + ".members", "expected members");
      std::vector<FeasibleSet> sets;
      for (std::size_t i = 0; i < members.size(); ++i)
        sets.push_back(decode_set(members[i], field + ".members[" + std::to_string(i) + "]"));
      return FeasibleSet::intersection(std::move(sets));
    }
  } catch (const ValidationError& e) {
    std::string f = e.field();
    throw ValidationError(f.find(field) == 0 ? f : field, e.what());
  }
  fail(field + ".type", "unknown set type '" + type + "'");
}

json encode_vector(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json encode_matrix(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(encode_vector(m.row(r)));
  return out;
}

json encode_oracle(const FunctionOracle& f) {
  return std::visit(
      [](const auto& o) -> json {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, LinearFn>) {
          return {{"type", "linear"}, {"c", encode_vector(o.c)}, {"d", o.d}};
        } else if constexpr (std::is_same_v<T, QuadraticForm>) {
          return {{"type", "quadratic_form"}, {"matrix", encode_matrix(o.a)}};
        } else if constexpr (std::is_same_v<T, LeastSquares>) {
          return {{"type", "least_squares"},
                  {"matrix", encode_matrix(o.a)},
                  {"rhs", encode_vector(o.b)}};
        } else if constexpr (std::is_same_v<T, SquaredDistance>) {
          return {{"type", "squared_distance"}, {"anchor", encode_vector(o.anchor)}};
        } else if constexpr (std::is_same_v<T, L1Norm>) {
          return {{"type", "l1_norm"}, {"dimension", o.dim}};
        } else if constexpr (std::is_same_v<T, MaxOfAffine>) {
          json pieces = json::array();
          for (const AffinePiece& p : o.pieces)
            pieces.push_back({{"c", encode_vector(p.c)}, {"d", p.d}});
          return {{"type", "max_of_affine"}, {"pieces", pieces}};
        } else {
          return {{"type", "dist_to_disc_squared"}, {"dimension", o.dim}};
        }
      },
      f.variant());
}

json encode_set(const FeasibleSet& s) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return {{"type", "whole_space"}, {"dimension", v.dim}};
        } else if constexpr (std::is_same_v<T, Box>) {
          return {{"type", "box"},
                  {"lower", encode_vector(v.lower)},
                  {"upper", encode_vector(v.upper)}};
        } else if constexpr (std::is_same_v<T, Ball>) {
          return {{"type", "ball"}, {"center", encode_vector(v.center)}, {"radius", v.radius}};
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          return {{"type", "halfspace"},
                  {"normal", encode_vector(v.normal)},
                  {"offset", v.offset},
                  {"sense", v.sense == Sense::LessEqual ? "<=" : ">="}};
        } else if constexpr (std::is_same_v<T, Simplex>) {
          return {{"type", "simplex"}, {"dimension", v.dim}, {"total", v.total}};
        } else {
          json members = json::array();
          for (const FeasibleSet& m : v.members) members.push_back(encode_set(m));
          return {{"type", "intersection"}, {"members", members}};
        }
      },
      s.variant());
}

void apply_defaults(const json& j, SolverConfig& cfg) {
  if (j.contains("eps")) cfg.threshold_eps = finite_number(j["eps"], "defaults.eps");
  if (j.contains("eta_base"))
    cfg.eta_schedule.base = finite_number(j["eta_base"], "defaults.eta_base");
  if (j.contains("criterion")) {
    std::string c = j["criterion"].get<std::string>();
    if (c != "A" && c != "B") fail("defaults.criterion", "expected 'A' or 'B'");
    cfg.criterion = c == "A" ? StoppingCriterion::A : StoppingCriterion::B;
  }
  if (j.contains("sigma")) cfg.sigma = finite_number(j["sigma"], "defaults.sigma");
  if (j.contains("beta")) cfg.beta = finite_number(j["beta"], "defaults.beta");
  if (j.contains("max_outer")) cfg.max_outer = j["max_outer"].get<int>();
  if (j.contains("inner_budget")) cfg.inner_budget = j["inner_budget"].get<long>();
  if (j.contains("inner_epsilon"))
    cfg.inner_epsilon = finite_number(j["inner_epsilon"], "defaults.inner_epsilon");
  if (j.contains("feas_tol")) cfg.feas_tol = finite_number(j["feas_tol"], "defaults.feas_tol");
}

}  // namespace

LoadedProblem parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  } catch (const json::exception& e) {
    // e.g. numeric overflow while parsing a literal
    throw ValidationError("$", e.what());
  }
  if (!j.is_object()) fail("$", "expected a JSON object");

  LoadedProblem out{
      ProblemInstance{decode_oracle(member(j, "f", "$"), "f"),
                      decode_oracle(member(j, "g", "$"), "g"),
                      decode_set(member(j, "C", "$"), "C"), std::nullopt,
                      j.contains("name") ? j["name"].get<std::string>() : ""},
      SolverConfig{}};

  if (j.contains("dimension")) {
    auto dim = j["dimension"].get<Eigen::Index>();
    if (dim != out.instance.C.dimension()) fail("dimension", "does not match C");
  }
  if (j.contains("known_lower_optimum") && !j["known_lower_optimum"].is_null())
    out.instance.known_lower_optimum =
        finite_number(j["known_lower_optimum"], "known_lower_optimum");
  if (j.contains("defaults")) apply_defaults(j["defaults"], out.defaults);

  validate(out.instance);
  out.instance.C.feasibility_probe();
  return out;
}

LoadedProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_problem(text);
}

std::string problem_to_json(const ProblemInstance& instance) {
  json j;
  j["name"] = instance.name;
  j["dimension"] = instance.C.dimension();
  j["f"] = encode_oracle(instance.f);
  j["g"] = encode_oracle(instance.g);
  j["C"] = encode_set(instance.C);
  if (instance.known_lower_optimum) j["known_lower_optimum"] = *instance.known_lower_optimum;
  return j.dump(2);
}

void save_problem(const ProblemInstance& instance, const std::filesystem::path& path) {
  std::ofstream outf(path);
  if (!outf) throw IoError("cannot write " + path.string());
  outf << problem_to_json(instance) << '\n';
}

}  // namespace sbp
