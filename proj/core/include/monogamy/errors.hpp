#pragma once

#include <stdexcept>
#include <string>

namespace monogamy {

// Base of every exception thrown by the library. The CLI maps any Error to
// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes that do not fit together (non-square input, tensor factor
// mismatch, POVM of the wrong size).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An operator expected to be positive semi-definite has an eigenvalue
// below the PSD floor.
class NotPsdError : public Error {
 public:
  using Error::Error;
};

// A scalar parameter is outside the range where the formula is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A request would exceed a hard size guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Structural validation failures (non-POVM, non-density, bad permutation
// set, duplicate Q-set pairs, malformed fixtures).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace monogamy
