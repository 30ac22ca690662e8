#pragma once

#include <stdexcept>
#include <string>

namespace magfb {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Drift matrix has an eigenvalue with non-negative real part.
class StabilityError : public Error {
 public:
  using Error::Error;
};

// Singular system or degenerate operating point.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Iteration failure or a physicality check violated beyond tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace magfb
