#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "xq/rational.hpp"

namespace xq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const { return expected_; }
  std::size_t actual() const { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

// An enumeration or table would exceed its configured limit. `required` is the
// exact size that would have been needed.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string what, Integer required, Integer limit)
      : Error("budget exceeded (" + what + "): requires " + required.get_str() +
              ", limit " + limit.get_str()),
        required_(std::move(required)),
        limit_(std::move(limit)) {}

  const Integer& required() const { return required_; }
  const Integer& limit() const { return limit_; }

 private:
  Integer required_;
  Integer limit_;
};

class NotACompletion : public Error {
 public:
  NotACompletion() : Error("instance is not a completion of the partial instance") {}
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class InvalidModel : public Error {
 public:
  explicit InvalidModel(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid model";
    for (const auto& s : v) out += "; " + s;
    return out;
  }

  std::vector<std::string> violations_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

inline void check_dim(std::size_t expected, std::size_t actual) {
  if (expected != actual) throw DimensionMismatch(expected, actual);
}

inline void check_budget(const char* what, const Integer& required, std::uint64_t limit) {
  Integer lim(std::to_string(limit), 10);
  if (required > lim) throw BudgetExceeded(what, required, lim);
}

}  // namespace xq
