#pragma once

#include <array>

// Implemented by a translation unit generated at build time from the exact
// derivation (see tools/derive_tables.cpp).
namespace duffing::generated {

// Coefficients of the response polynomial in A0, ascending, at X = Omega^2.
std::array<double, 10> response_coefficients(double gamma, double zeta,
                                             double f_amp, double f0, double x);

// Coefficients of the jump-manifold polynomial in A0, ascending.
std::array<double, 22> jump_coefficients(double gamma, double zeta,
                                         double f_amp, double f0);

}  // namespace duffing::generated
