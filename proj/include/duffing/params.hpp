#pragma once

#include <stdexcept>
#include <string>

namespace duffing {

// Physical parameters of y'' + 2 zeta y' + gamma y^3 = F0 + F cos(Omega t).
struct Params {
  double gamma = 0.0783;
  double zeta = 0.025;
  double f_amp = 0.1;  // F
  double f0 = 0.4;     // F0

  // gamma F^2, the combination the singular-point condition depends on.
  double c() const { return gamma * f_amp * f_amp; }

  // Throws std::invalid_argument unless gamma > 0, zeta > 0, F >= 0,
  // F0 >= 0 and all finite.
  void validate() const;
};

std::string to_string(const Params& p);

}  // namespace duffing
