#pragma once

#include <optional>
#include <vector>

#include "duffing/execution.hpp"
#include "duffing/params.hpp"
#include "duffing/real_poly.hpp"

namespace duffing::steady {

// y(t) = a0 + a1 cos(omega t + theta), theta in (-pi, 0].
struct SteadyState {
  double omega = 0.0;
  double a0 = 0.0;
  double a1 = 0.0;
  double theta = 0.0;
};

// Radicands down to this value are treated as rounding noise and clamped to 0.
inline constexpr double kRadicandTol = -1e-12;

// Response polynomial f(Omega, A0) in A0 (degree 9), coefficients from the
// generated exact derivation.  Throws std::invalid_argument for omega <= 0 or
// gamma <= 0.
RealPoly build_f_poly(const Params& pr, double omega);

// A1 from the mean-displacement balance
//   gamma A0^3 + 3/2 gamma A0 A1^2 - F0 = 0;
// std::nullopt when A1^2 < 0.  Throws std::domain_error at a0 == 0.
std::optional<double> a1_from_a0(const Params& pr, double a0);

// The single real root A0 of the same balance for given A1 (Cardano's root,
// arranged without cancellation).
double a0_from_a1(const Params& pr, double a1);

// A1^2 (3 gamma A0^2 + 3/4 gamma A1^2 - Omega^2)^2 + 4 Omega^2 zeta^2 A1^2 - F^2
// with A0 = a0_from_a1(a1).
double g_residual(const Params& pr, double omega, double a1);

// Phase of the steady state, atan2(-2 zeta A1 Omega, A1 (-Omega^2 + 3 gamma
// A0^2 + 3/4 gamma A1^2)).
double theta_of(const Params& pr, double omega, double a0, double a1);

// Residuals of the three harmonic-balance equations at a steady state.
struct BalanceResiduals {
  double cosine;    // -A1 W^2 + 3g A0^2 A1 + 3/4 g A1^3 - F cos(theta)
  double sine;      // -2 zeta A1 W - F sin(theta)
  double mean;      // g A0^3 + 3/2 g A0 A1^2 - F0
  double cosine_scale, sine_scale, mean_scale;  // largest term of each
};
BalanceResiduals balance_residuals(const Params& pr, const SteadyState& s);

// Physical steady states (A0 > 0 unless include_negative, A1 real) at omega.
std::vector<SteadyState> steady_states(const Params& pr, double omega,
                                       bool include_negative = false);

struct CurveSample {
  double omega = 0.0;
  int branch = 0;
  double a0 = 0.0;
  double a1 = 0.0;
  double theta = 0.0;
};

struct ResponseCurve {
  Params params;
  std::vector<CurveSample> samples;  // ordered by omega, then branch
};

struct OmegaRange {
  double lo = 0.0;
  double hi = 0.0;
  int count = 400;

  double at(int i) const {
    return count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  }
};

// Samples the amplitude-frequency response on an even omega grid.  Root
// solving per omega runs under `exec`; branch ids are then assigned by
// nearest-neighbour continuation in A0, a new branch starting whenever a
// root moves more than five times its previous inter-sample motion.
ResponseCurve response_curve(const Params& pr, OmegaRange range,
                             Execution exec = Execution::parallel,
                             bool include_negative = false);

}  // namespace duffing::steady
