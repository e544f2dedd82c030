#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hermnuc {

/// Contract violation on an input (bad dimension, out-of-range parameter).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter lies outside the range declared for it.
class RangeError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A user-supplied function or symbol produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative linear-algebra kernel failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponent pair (p1, p2) not covered by any summability regime.
class UnsupportedExponent : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input file could not be opened.
class MissingFile : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in an expression or config file; positions are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message + " at line " + std::to_string(line) +
                           ", column " + std::to_string(column)),
        message_(message),
        line_(line),
        column_(column) {}

  /// The message without the position suffix.
  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hermnuc
