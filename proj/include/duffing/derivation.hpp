#pragma once

#include <string>

#include "duffing/rational_poly.hpp"

namespace duffing::algebra {

// Exact elimination chain for the steady-state response and the jump
// manifold.  Everything downstream that needs the coefficient tables is
// generated from these polynomials; nothing is transcribed by hand.
struct DerivedTables {
  // A1sq*(-X + 3 gamma A0^2 + 3/4 gamma A1sq)^2 + 4 X zeta^2 A1sq - F^2
  RatPoly amplitude_equation;
  // amplitude_equation with A1sq := 2(F0 - gamma A0^3) / (3 gamma A0),
  // multiplied by (3 gamma A0)^3.
  RatPoly response_cleared;
  // response_cleared = response_factor * response, response primitive with
  // positive A0^9 coefficient.
  RatPoly response;
  RatPoly response_factor;
  // Res_X(response, d response / d A0)
  RatPoly tangency_resultant;
  // tangency_resultant = jump_factor * jump, jump primitive with positive
  // A0^21 coefficient.
  RatPoly jump;
  RatPoly jump_factor;
};

DerivedTables derive_tables();

// Elimination of A0 from the response polynomial and its A0-derivative on the
// branch F0 = 2 X A0 + 4 zeta^2 A0 - 5 gamma A0^3 where d/dOmega vanishes.
struct SingularElimination {
  RatPoly branch_f0;          // the F0 expression substituted
  RatPoly response_on_branch;  // response with F0 replaced, A0 content removed
  RatPoly slope_on_branch;     // d response / d A0 likewise
  RatPoly eliminant;           // Res_A0 of the two
};

SingularElimination derive_singular_conditions(const RatPoly& response);

// Audit report: one "c_k = ..." / "a_k = ..." line per coefficient plus the
// normalization factors.
std::string tables_report(const DerivedTables& tables);

// C++ translation unit defining duffing::generated::response_coefficients and
// duffing::generated::jump_coefficients.
std::string coefficient_source(const DerivedTables& tables);

}  // namespace duffing::algebra
