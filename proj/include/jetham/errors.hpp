#pragma once

#include <stdexcept>
#include <string>

namespace jetham {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `column` is 1-based, `line` is 1-based (0 when the
/// text had no line structure).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int column, int line = 0)
      : Error(message), column_(column), line_(line) {}

  int column() const { return column_; }
  int line() const { return line_; }

 private:
  int column_;
  int line_;
};

/// Syntactically valid text outside the polynomial fragment (division by a
/// non-constant, function calls, negative powers).
class UnsupportedExpression : public ParseError {
 public:
  using ParseError::ParseError;
};

/// An operation was applied outside its domain: undeclared coordinate,
/// momentum passed to a jet-side operator, and similar.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A jet coordinate would exceed the context's max_order.
class OrderOverflow : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Constraint rows that cannot be satisfied (e.g. 1 = 0).
class DegenerateLagrangian : public Error {
 public:
  using Error::Error;
};

/// A self-check failed. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Grid too small, missing field or sample coordinate, bad grid file.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace jetham
