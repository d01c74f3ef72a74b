#pragma once

#include <stdexcept>
#include <string>

namespace ffl {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Out-of-range parameter, unknown name, bad label, violated call precondition.
class ParameterError : public Error {
public:
  using Error::Error;
};

// Operation applied to a space of the wrong kind.
class KindError : public Error {
public:
  using Error::Error;
};

// Malformed table shape: non-square, non-cubic, row size mismatch.
class StructureError : public Error {
public:
  using Error::Error;
};

// Expression or document parse failure; positions are 1-based.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

// Expression evaluation failure, e.g. division by zero.
class EvalError : public Error {
public:
  using Error::Error;
};

// A table failed axiom validation where a valid space was required.
class ValidationError : public Error {
public:
  using Error::Error;
};

}  // namespace ffl
