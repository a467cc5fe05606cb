#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "duffing/execution.hpp"
#include "duffing/params.hpp"
#include "duffing/real_poly.hpp"

namespace duffing::singular {

// d f / d Omega = 8 A0 * Omega * (F0 - gamma A0^3) * (F0 + A0 (5 gamma A0^2
// - 4 zeta^2 - 2 Omega^2)).  The printed factorization writes delta^2 for the
// damping term; delta is the same parameter as zeta.
std::array<double, 4> df_domega_factored(const Params& pr, double omega, double a0);

// F0 annihilating the last factor: 2 Omega^2 A0 + 4 zeta^2 A0 - 5 gamma A0^3.
double f0_branch(const Params& pr, double omega, double a0);

// Quartic in X = Omega^2 whose positive roots would be singular points, with
// c = gamma F^2.
struct SingularCondition {
  double zeta = 0.0;
  double c = 0.0;
  RealPoly quartic;
};

RealPoly singular_quartic(double zeta, double c);

// A0^2 on the singular branch: the exact elimination gives
//   45 F^2 gamma^2 A0^2 = 16 zeta^2 X^3 + 64 zeta^4 X^2 + (9 gamma F^2 + 80 zeta^6) X
//                         + 15 gamma F^2 zeta^2 + 32 zeta^8
// on the zero set of the quartic.  Throws std::domain_error unless gamma > 0
// and F > 0.
double a0sq_expression(double zeta, double gamma, double f_amp, double x);

// Sign changes in the coefficient sequence (Descartes' bound on positive roots).
int descartes_sign_changes(const RealPoly& p);

struct Violation {
  double zeta, c, x;
};

struct ScanGrid {
  double zeta_lo = 0.005, zeta_hi = 0.5;
  double c_lo = 1e-6, c_hi = 10.0;
  int n_zeta = 200, n_c = 200;

  // Logarithmic spacing on both axes; a collapsed range yields one value.
  double zeta_at(int i) const;
  double c_at(int j) const;
};

struct ScanReport {
  ScanGrid grid;
  std::size_t checked = 0;
  std::size_t descartes_cleared = 0;  // points needing no root finding
  std::vector<Violation> violations;
};

// Positive real roots of the quartic over the grid.  Points with no sign
// change in the coefficients are cleared by Descartes' rule; the rest go
// through the root finder.  Violations are listed in grid order.
ScanReport scan_no_singular(const ScanGrid& grid, Execution exec = Execution::parallel);

}  // namespace duffing::singular
