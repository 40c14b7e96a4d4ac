#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace copnum {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph text or JSON. line() is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Exact computation would exceed its configured resource budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required,
                 std::uint64_t budget)
      : Error(what + " (required " + std::to_string(required) + ", budget " +
              std::to_string(budget) + ")"),
        required_(required),
        budget_(budget) {}
  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

// Iterative numerical method did not converge within its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Randomized generator gave up after max_attempts.
class GenerationFailure : public Error {
 public:
  GenerationFailure(const std::string& what, std::uint64_t attempts)
      : Error(what + " after " + std::to_string(attempts) + " attempts"),
        attempts_(attempts) {}
  std::uint64_t attempts() const noexcept { return attempts_; }

 private:
  std::uint64_t attempts_;
};

// Invalid experiment / CLI configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace copnum
