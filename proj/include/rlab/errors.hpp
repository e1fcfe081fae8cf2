#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Input outside an operation's precondition (zero polynomial, gap k, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iterative method did not reach its tolerance within the budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class SingularCurveError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace rlab
