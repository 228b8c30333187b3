#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace segre {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UniverseMismatch : public Error {
 public:
  UniverseMismatch() : Error("operands live in different variable universes") {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by the zero polynomial") {}
};

/// Raised by div_exact when the denominator is not an exact factor.
class NotDivisible : public Error {
 public:
  NotDivisible() : Error("denominator does not divide numerator exactly") {}
};

class MissingDegree : public Error {
 public:
  explicit MissingDegree(const std::string& var)
      : Error("no degree entry for variable " + var) {}
};

class FrozenMutation : public Error {
 public:
  explicit FrozenMutation(std::string vertex)
      : Error("cannot mutate at frozen or absent vertex " + vertex),
        vertex_(std::move(vertex)) {}
  const std::string& vertex() const noexcept { return vertex_; }

 private:
  std::string vertex_;
};

/// Seed data that breaks a structural invariant (skew-symmetry, BᵀG = 0, ...).
class InvalidSeed : public Error {
 public:
  explicit InvalidSeed(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const noexcept {
    return violations_;
  }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid seed";
    for (const auto& s : v) out += "; " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

class DegreeMismatch : public Error {
 public:
  DegreeMismatch(long long left, long long right)
      : Error("degree mismatch: " + std::to_string(left) +
              " != " + std::to_string(right)),
        left_(left),
        right_(right) {}
  long long left() const noexcept { return left_; }
  long long right() const noexcept { return right_; }

 private:
  long long left_;
  long long right_;
};

/// Something the mathematics says cannot happen did happen.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Counts were requested from an exchange graph that was cut off by bounds.
class TruncatedGraph : public Error {
 public:
  TruncatedGraph() : Error("exchange graph is truncated; counts undefined") {}
};

}  // namespace segre
