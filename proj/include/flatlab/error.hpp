#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flatlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

/// Division by an identically zero expression, or a substitution that
/// produces one in a denominator.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Numeric evaluation hit a denominator that is zero to working precision.
class NearSingular : public Error {
 public:
  using Error::Error;
};

/// An input expression references variables outside the allowed set.
class ScopeError : public Error {
 public:
  using Error::Error;
};

class SingularMetric : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A function of (x, z) that must depend on x does not.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// The antiderivative is not a rational function, or the KN iteration left
/// the class of rational solutions.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

class InstabilityError : public Error {
 public:
  using Error::Error;
};

class StepSizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace flatlab
