#pragma once

#include <stdexcept>
#include <string>

namespace ihat {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A gamma argument hit a pole (nonpositive integer).
class PoleError : public Error {
 public:
  using Error::Error;
};

// A gamma argument lies on (or within cut_epsilon of) the nonpositive real
// axis where the log-gamma branch is discontinuous.
class BranchCutError : public Error {
 public:
  using Error::Error;
};

// The contour integral does not converge (Delta1 < 0, boundary case outside
// its radius, or a tail that fails to decay).
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class NodeBudgetExceeded : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

// A Mellin variable or moment order lies outside the transform strip.
class StripError : public Error {
 public:
  using Error::Error;
};

// Malformed or invariant-violating parameter sets.
class SpecError : public Error {
 public:
  using Error::Error;
};

// Parameter outside a family's domain (nonpositive shape, z <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A constructed density failed its statistical validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace ihat
