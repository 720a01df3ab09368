#pragma once

#include <stdexcept>
#include <string>

namespace gdrazin {

/// Base of every exception thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("scalar division by zero") {}
};

struct ShapeError : Error {
  using Error::Error;
};

struct SingularMatrixError : Error {
  SingularMatrixError() : Error("matrix not invertible") {}
};

struct NotIdempotentError : Error {
  NotIdempotentError() : Error("p is not idempotent") {}
};

struct CornerMembershipError : Error {
  explicit CornerMembershipError(const std::string &what = "element not in corner algebra")
      : Error(what) {}
};

/// A formula was asked to run outside the hypotheses it is proved under.
struct HypothesisViolation : Error {
  explicit HypothesisViolation(const std::string &what) : Error("hypothesis violated: " + what) {}
};

struct GenerationError : Error {
  using Error::Error;
};

/// Malformed matrix text or JSON input.
struct ParseError : Error {
  using Error::Error;
};

} // namespace gdrazin
