#pragma once

#include <stdexcept>
#include <string>

namespace quadfam {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: duplicate nodes, empty node sets, non-positive tolerances.
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// A rule order that is even, non-positive or outside the supported range.
class InvalidOrder : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

/// An integration budget or interval that cannot form a valid composite plan.
class InvalidPlan : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

/// Peano constant requested for a rule that is not exact below the requested degree.
class ConventionViolation : public Error {
public:
  using Error::Error;
};

/// The integrand lacks something the method needs (e.g. a derivative).
class CapabilityError : public Error {
public:
  using Error::Error;
};

/// Step estimation is impossible because f'(b) == f'(a).
class DegenerateEstimator : public Error {
public:
  using Error::Error;
};

class NotFound : public Error {
public:
  using Error::Error;
};

/// The integrand failed (threw or returned a non-finite value) at `abscissa()`.
class EvaluationError : public Error {
public:
  EvaluationError(double x, const std::string& what)
      : Error("integrand evaluation failed at x = " + std::to_string(x) + ": " + what), x_(x) {}

  double abscissa() const noexcept { return x_; }

private:
  double x_;
};

}  // namespace quadfam
