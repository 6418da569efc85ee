#pragma once

#include <stdexcept>
#include <string>

namespace covexp {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands disagree on num_vars, degree cap, chart dimension or algebra dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An exact product would leave the truncated polynomial space.
class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Structure constants fail antisymmetry or the Jacobi identity.
class InvalidAlgebra : public Error {
 public:
  using Error::Error;
};

// Vector fields fail [X_a, X_b] = X_[a,b].
class InvalidRealization : public Error {
 public:
  using Error::Error;
};

// An input exponent does not satisfy the cocycle identity.
class NotACocycle : public Error {
 public:
  using Error::Error;
};

// Numeric failure in the floating-point models (non-scalar ratio, non-finite value, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace covexp
