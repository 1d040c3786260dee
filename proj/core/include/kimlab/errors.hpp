#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kimlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (mismatched tree
/// heights, unknown element ids, sort mismatches, infeasible parameters).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of a construction does not hold. The message
/// names the witness.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Raised when a construction discovers an internal inconsistency that its
/// inputs should have excluded.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// The search exceeded its configured node budget.
class SearchLimitError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace kimlab
