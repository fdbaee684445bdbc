#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seqspace {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// DSL text could not be parsed. Carries the byte offset of the failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_ = 0;
};

/// Evaluation failed at runtime (division by zero, non-integer exponent, ...).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// A domain precondition was violated (zero weight term, zero diagonal,
/// unsupported expansion base, enumeration guard, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two internal computation routes disagreed; indicates a kernel bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace seqspace
