#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nambu {

// Malformed expression text. `position()` is the 0-based byte offset of the
// offending token.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// An identifier that is not declared as a variable or parameter.
class UndeclaredName : public std::runtime_error {
 public:
  explicit UndeclaredName(std::string name);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Evaluation left the domain of an operation (sqrt of a negative number,
// division by zero at the binding).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An expression required to be polynomial is not.
class NotPolynomial : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integration produced a non-finite state.
class StepDivergence : public std::runtime_error {
 public:
  explicit StepDivergence(double last_good_time);
  double last_good_time() const { return last_good_time_; }

 private:
  double last_good_time_;
};

// The implicit midpoint fixed-point iteration failed to converge.
class MidpointNoConvergence : public std::runtime_error {
 public:
  explicit MidpointNoConvergence(double time);
  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace nambu
