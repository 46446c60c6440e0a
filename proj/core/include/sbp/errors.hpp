#pragma once

#include <stdexcept>
#include <string>

namespace sbp {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
public:
  DimensionMismatch(long expected, long got)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
};

/// Dykstra hit its sweep cap with residual above tolerance; the
/// intersection is ill-posed (likely empty or badly scaled).
class DykstraNoConvergence : public Error {
public:
  DykstraNoConvergence(double residual, int sweeps)
      : Error("Dykstra did not converge: residual " + std::to_string(residual) +
              " after " + std::to_string(sweeps) + " sweeps") {}
};

/// No backtracking exponent satisfied the descent inequality. For a convex
/// smooth objective this cannot happen (the accepted step always exists),
/// so it signals a broken oracle.
class ArmijoExhausted : public Error {
public:
  explicit ArmijoExhausted(int max_backtracks)
      : Error("Armijo search failed within " + std::to_string(max_backtracks) +
              " halvings; lower-level oracle is not convex/smooth") {}
};

/// The projected-gradient direction had positive inner product with the
/// gradient, which contradicts the projection inequality; signals a broken
/// projection oracle.
class PositiveDirDeriv : public Error {
public:
  explicit PositiveDirDeriv(double value)
      : Error("positive directional derivative " + std::to_string(value) +
              " in lower-level step") {}
};

/// The inner solver never found a point satisfying the level constraint;
/// the level is at or below the lower-level minimum, violating the outer
/// loop contract.
class NeverFeasible : public Error {
public:
  NeverFeasible() : Error("inner solver found no feasible iterate") {}
};

class NotSmooth : public Error {
public:
  NotSmooth() : Error("oracle is not smooth; no gradient available") {}
};

class InvalidConfig : public Error {
public:
  explicit InvalidConfig(const std::string& what) : Error("invalid config: " + what) {}
};

class MissingKnownAlpha : public Error {
public:
  MissingKnownAlpha()
      : Error("stopping criterion A requires the known lower-level optimum") {}
};

/// Input document failed schema or invariant validation. `field` holds a
/// path such as "g.matrix" pointing at the offending entry.
class ValidationError : public Error {
public:
  ValidationError(const std::string& field, const std::string& what)
      : Error("validation failed at '" + field + "': " + what), field_(field) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

/// JSON parse failure; carries the byte offset reported by the parser.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t byte)
      : Error("parse error at byte " + std::to_string(byte) + ": " + what),
        byte_(byte) {}
  std::size_t byte() const { return byte_; }

private:
  std::size_t byte_;
};

class UnknownExperiment : public Error {
public:
  explicit UnknownExperiment(const std::string& id)
      : Error("unknown experiment id: " + id) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error("io error: " + what) {}
};

}  // namespace sbp
