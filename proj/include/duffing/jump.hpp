#pragma once

#include <string_view>
#include <vector>

#include "duffing/execution.hpp"
#include "duffing/params.hpp"
#include "duffing/real_poly.hpp"

namespace duffing::jump {

// A vertical tangency of the response curve: f = 0 and df/dA0 = 0.
struct JumpPoint {
  double omega = 0.0;
  double a0 = 0.0;
  double a1 = 0.0;
};

// Jump-manifold polynomial J(A0), degree 21, from the generated derivation.
RealPoly build_jump_poly(const Params& pr);

// Omega^2 paired with a root A0 of J:
//   (-50 g^4 A0^12 + 95 g^3 F0 A0^9 + (6 F^2 g^2 - 39 g^2 F0^2) A0^6
//    + (3 F^2 g F0 - 7 g F0^3) A0^3 + F0^4)
//   / (2 A0 (F0 - 10 g A0^3) (F0 - g A0^3)^2)
// Throws PoleError when a denominator factor vanishes to relative 1e-10.
double omega_sq_at(const Params& pr, double a0);

// Positive real roots of J (the jump manifold over fixed parameters).
std::vector<double> manifold_roots(const Params& pr);

// Vertical tangencies sorted by omega.  Roots of J are kept when A0 > 0,
// away from the poles of omega_sq_at, with Omega^2 > 0 and real A1.
std::vector<JumpPoint> jump_points(const Params& pr);

// Physical steady-state count at omega (positive A0 with real A1).
int count_solutions(const Params& pr, double omega);

enum class Parameter { gamma, zeta, f_amp, f0 };

std::string_view parameter_name(Parameter p);  // "gamma", "zeta", "f", "f0"
Parameter parse_parameter(std::string_view name);  // throws std::invalid_argument
double get(const Params& pr, Parameter p);
Params with(Params pr, Parameter p, double value);

struct SampleRange {
  double lo = 0.0;
  double hi = 0.0;
  int count = 400;

  double at(int i) const {
    return count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  }
};

struct SlicePoint {
  double f_amp = 0.0;
  double f0 = 0.0;
  double a0 = 0.0;
};

// Sampled section of the jump manifold.  fixed holds gamma and zeta (and F
// for the 2D section); points are ordered by sample, then by A0.
struct JumpManifoldSlice {
  Params fixed;
  bool f_amp_free = false;
  std::vector<SlicePoint> points;
  std::vector<int> roots_per_sample;
};

JumpManifoldSlice manifold_slice_2d(double gamma, double zeta, double f_amp,
                                    SampleRange f0_range,
                                    Execution exec = Execution::parallel);

JumpManifoldSlice manifold_slice_3d(double gamma, double zeta, SampleRange f_range,
                                    SampleRange f0_range,
                                    Execution exec = Execution::parallel);

struct BorderPoint {
  Parameter param = Parameter::f0;
  double value = 0.0;
  double a0_double = 0.0;
  int count_below = 0;
  int count_above = 0;
  // Value 0 is a degenerate boundary (J loses its low-order terms there),
  // reported without a double-root certificate.
  bool boundary = false;
  // Sylvester-determinant sign of (J, J') compared with the discriminant
  // sign at every bisection step.
  int sylvester_checks = 0;
  int sylvester_agreements = 0;
};

struct UnresolvedBracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct BorderScan {
  std::vector<BorderPoint> points;  // ascending in value
  std::vector<UnresolvedBracket> unresolved;
};

// Values of `varied` in [range.lo, range.hi] where the number of vertical
// tangencies changes.  A coarse grid of range.count samples is scanned for
// changes in the tangency count; each bracket is bisected on the sign of the
// discriminant of J (from its roots) and cross-checked against the sign of
// the Sylvester determinant of (J, J').  Brackets where the discriminant does
// not change sign are subdivided a few times before being reported as
// unresolved.
BorderScan border_set(const Params& fixed, Parameter varied, SampleRange range,
                      Execution exec = Execution::parallel);

// Sign of the discriminant of J, and the same sign recovered from the
// Sylvester determinant of (J, J') via Res(p, p') = (-1)^(n(n-1)/2) a_n
// Disc(p).
struct DiscriminantSigns {
  int from_roots = 0;
  int from_sylvester = 0;
};
DiscriminantSigns jump_discriminant_signs(const Params& pr);

struct DoubleOmegaEvent {
  double f0 = 0.0;
  double omega = 0.0;
  double a0_low = 0.0;
  double a0_high = 0.0;
};

// F0 values where two distinct vertical tangencies share the same omega.
// Tangencies are identified across samples by their A0 order; for each pair
// the signed gap Omega_i - Omega_j is bisected where it changes sign.
std::vector<DoubleOmegaEvent> double_omega_points(double gamma, double zeta,
                                                  double f_amp, SampleRange f0_range,
                                                  Execution exec = Execution::parallel);

}  // namespace duffing::jump
