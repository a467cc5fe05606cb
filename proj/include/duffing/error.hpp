#pragma once

#include <stdexcept>
#include <string>

namespace duffing {

// Root finding, bracketing or other numerical procedure failed to deliver a
// result at the requested accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation at a point where a closed-form expression has a pole.
class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Time integration left the finite region |y| <= 1e6.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}

  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace duffing
