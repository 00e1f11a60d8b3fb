#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tgic {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An instance, file or matrix violates a documented invariant.
/// `line()` is the 1-based source line (files) or row (instances), 0 if unknown.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), message_(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t line_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A search hit its configured limits before reaching an exact answer.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace tgic
