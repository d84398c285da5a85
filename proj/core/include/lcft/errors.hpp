#pragma once

#include <stdexcept>
#include <string>

namespace lcft {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or malformed input (argument validation).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical precondition does not hold (Seiberg bounds, moment thresholds).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Evaluation hit a pole or a zero of a denominator.
class PoleError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Conformal-block evaluation at an internal weight where the Gram matrix is
/// (numerically) singular.
class DegenerateWeightError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// An iterative or adaptive procedure failed to reach its target accuracy.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace lcft
