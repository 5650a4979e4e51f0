#pragma once

#include <stdexcept>
#include <string>

namespace linefig {

/// Bad input data or configuration. The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degenerate spherical geometry, e.g. a link between coincident stars or
/// two overlapping arcs on the same great circle.
class GeometryError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical failure (non-finite values, failed optimisation). Exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace linefig
