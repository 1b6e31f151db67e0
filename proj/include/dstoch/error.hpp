#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dstoch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed object: dimension mismatches, out-of-range indices, bad arguments.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An input violates a mathematical precondition, e.g. a failed uniformity
/// condition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The requested configuration is outside what the exact routines support.
class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t limit)
      : Error(what + " (limit " + std::to_string(limit) + ")"), limit_(limit) {}

  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  /// 1-based line number, 0 when not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace dstoch
