#pragma once

#include <stdexcept>
#include <string>

namespace bondalt {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed something that violates a precondition (bad index, odd
/// chain length, non-finite input, empty record list, ...).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// An iterative kernel failed to reach its tolerance. Carries the last
/// residual and the iteration count for diagnostics.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double residual, int iterations)
      : Error(what), residual(residual), iterations(iterations) {}

  double residual = 0.0;
  int iterations = 0;
};

/// The coupling angle sits on a phase boundary, where the ground manifold
/// is extensively degenerate and no symmetry-broken pair exists.
class BoundaryError : public Error {
 public:
  using Error::Error;
};

/// A state with (numerically) zero norm was handed to an operation that
/// needs a normalizable wavefunction.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

/// File system / serialization failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bondalt
