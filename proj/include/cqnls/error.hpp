#ifndef CQNLS_ERROR_HPP
#define CQNLS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cqnls {

// Base of every library exception. The CLI maps the concrete type onto an
// exit code, so throw the most specific one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Admissible-looking input for which no wave of the requested period exists.
class NoSolutionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Elliptic modulus indistinguishable from 0 or 1.
class DegenerateError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed configuration (grid size, spacing, flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Inputs that are individually valid but inconsistent with each other.
class ContractError : public Error {
 public:
  using Error::Error;
};

// A numerical self-check failed.
class NumericError : public Error {
 public:
  using Error::Error;
};

class BlowUpError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace cqnls

#endif  // CQNLS_ERROR_HPP
