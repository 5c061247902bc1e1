#pragma once

#include <stdexcept>
#include <string>

namespace extropy {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user input: bad parameters, malformed specs, unknown identifiers.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Base class for failures of a numerical procedure on valid input.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A measure or claim was requested at a point where it is undefined,
// e.g. a residual quantity at t with survival probability zero.
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Adaptive quadrature ran out of evaluations (or resolution) before meeting
// its tolerance. Distinct from a detected divergence, which is a value.
class BudgetExhaustedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A finite-difference stencil could not be placed inside the domain.
class StencilError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// The quadratic for the hazard rate had no admissible root.
class InversionInfeasibleError : public NumericalError {
 public:
  InversionInfeasibleError(const std::string& what, double t)
      : NumericalError(what), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

// A tabulated curve is too coarse for the requested reconstruction.
class ResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A monotone transform whose derivative vanishes where it was sampled.
class TransformDegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace extropy
