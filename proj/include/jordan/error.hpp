#pragma once

#include <stdexcept>
#include <string>

namespace jordan {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed element: wrong coordinate count or non-finite entries.
class InvalidElement : public Error {
 public:
  using Error::Error;
};

/// Operands live in different algebras.
class IncompatibleAlgebras : public Error {
 public:
  using Error::Error;
};

/// A spectrum value falls outside the domain of a scalar function.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double eigenvalue, std::string function)
      : Error(what), eigenvalue_(eigenvalue), function_(std::move(function)) {}

  double eigenvalue() const noexcept { return eigenvalue_; }
  const std::string& function() const noexcept { return function_; }

 private:
  double eigenvalue_;
  std::string function_;
};

/// Inverse requested for an element with 0 in its spectrum.
class SingularError : public Error {
 public:
  SingularError(const std::string& what, double min_abs_eigenvalue)
      : Error(what), min_abs_eigenvalue_(min_abs_eigenvalue) {}

  double min_abs_eigenvalue() const noexcept { return min_abs_eigenvalue_; }

 private:
  double min_abs_eigenvalue_;
};

/// An operand that must be positive invertible is not.
class PositivityError : public Error {
 public:
  using Error::Error;
};

/// Missing or out-of-range numeric parameter.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A backend self-check failed (signals a formula bug, not bad input).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A hypothesis sampler could not produce a conforming sample.
class SamplerError : public Error {
 public:
  using Error::Error;
};

/// Unknown theorem / identity / expression name.
class UnknownId : public Error {
 public:
  using Error::Error;
};

}  // namespace jordan
