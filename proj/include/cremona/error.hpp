#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cremona {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied malformed input (wrong arity, mismatched variable lists, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

class VariableMismatch : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(what + " (line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A well-posed computation had a negative mathematical outcome.
class MathError : public Error {
 public:
  using Error::Error;
};

class DegenerateComposition : public MathError {
 public:
  using MathError::MathError;
};

class IndeterminatePoint : public MathError {
 public:
  using MathError::MathError;
};

class NotClosedAtDegree : public MathError {
 public:
  using MathError::MathError;
};

class DimCapExceeded : public MathError {
 public:
  using MathError::MathError;
};

class NotInSpan : public MathError {
 public:
  using MathError::MathError;
};

class NotRealValued : public MathError {
 public:
  using MathError::MathError;
};

class NotOnBoundary : public MathError {
 public:
  using MathError::MathError;
};

class NotSmooth : public MathError {
 public:
  using MathError::MathError;
};

}  // namespace cremona
