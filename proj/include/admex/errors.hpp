#pragma once

#include <stdexcept>
#include <string>

namespace admex {

// Base class for all admex errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual input (decimal string, fraction string, config file).
struct ParseError : Error {
  using Error::Error;
};

// Precondition violation: value outside the documented domain.
struct DomainError : Error {
  using Error::Error;
};

// The convexity-breaking recursion was invoked outside its hypothesis.
// Never clamped: silently repairing the inputs would fabricate admissibility.
struct HypothesisError : Error {
  using Error::Error;
};

// Requested computation exceeds the configured work budget.
struct BudgetError : Error {
  using Error::Error;
};

// An internal invariant failed; indicates a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace admex
