#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The agent count or sequence space exceeds what can be tabulated.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside an operation's domain (e.g. agent not in sequence).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `line` and `column` are 1-based; 0 means "not tied to a position".
class FormatError : public Error {
 public:
  FormatError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ", column " + std::to_string(column) +
                              ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A mathematically guaranteed property failed to hold. Always a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace tcg
