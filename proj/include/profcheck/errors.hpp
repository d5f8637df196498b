#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace profcheck {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad alphabet, mismatched
/// targets, duplicate names, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed presentation text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::string const& msg, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A search or enumeration ran out of its configured budget. This is never a
/// mathematical verdict.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace profcheck
