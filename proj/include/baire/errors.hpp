#pragma once

#include <stdexcept>
#include <string>

namespace baire {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Formula text that does not match the surface grammar.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, int line, int column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// An exhaustive procedure would exceed its configured budget.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/// An operation was called outside its precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

}  // namespace baire
