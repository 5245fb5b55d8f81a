#pragma once

#include <stdexcept>
#include <string>

namespace utgrad {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or structurally invalid input (bad shapes, bad file contents).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Operands taken from different fields or groups.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Inverting zero, or a singular matrix.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// An enumeration or search would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, unsigned long long watermark)
      : Error(what), watermark_(watermark) {}

  unsigned long long watermark() const noexcept { return watermark_; }

 private:
  unsigned long long watermark_;
};

/// The classifier reached a step whose expected witness does not exist.
class ClassificationError : public Error {
 public:
  ClassificationError(const std::string& step, const std::string& detail)
      : Error(step + ": " + detail), step_(step) {}

  const std::string& step() const noexcept { return step_; }

 private:
  std::string step_;
};

}  // namespace utgrad
