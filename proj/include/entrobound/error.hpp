#pragma once

#include <stdexcept>
#include <string>

namespace entrobound {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input or violated precondition. Maps to CLI exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a scalar function.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Truncation or solver failure. Maps to CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace entrobound
