#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace duffing {

// A real number carried as sign and natural log of its magnitude, for
// products (determinants, discriminants) whose magnitude leaves the double
// range long before their sign stops being meaningful.
struct SignedLog {
  int sign = 0;  // -1, 0 or +1
  double log_abs = -std::numeric_limits<double>::infinity();

  static SignedLog zero() { return {}; }
  static SignedLog from(double v) {
    if (v == 0.0) return {};
    return {v > 0 ? 1 : -1, std::log(std::fabs(v))};
  }

  bool is_zero() const { return sign == 0; }

  // Throws std::range_error when the magnitude is outside the normal double
  // range.
  double value() const {
    if (sign == 0) return 0.0;
    constexpr double kMaxLog = 709.78;
    constexpr double kMinLog = -708.39;
    if (!(log_abs < kMaxLog) || !(log_abs > kMinLog)) {
      throw std::range_error("SignedLog: magnitude outside double range");
    }
    return sign * std::exp(log_abs);
  }

  SignedLog& operator*=(const SignedLog& o) {
    sign *= o.sign;
    log_abs = sign == 0 ? -std::numeric_limits<double>::infinity() : log_abs + o.log_abs;
    return *this;
  }
};

}  // namespace duffing
