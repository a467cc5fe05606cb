#pragma once

#include <limits>
#include <vector>

#include "duffing/execution.hpp"
#include "duffing/params.hpp"
#include "duffing/steady.hpp"

namespace duffing::sim {

struct OscState {
  double t = 0.0;
  double y = 0.0;
  double v = 0.0;
};

// Every step of a fixed-step run, initial state included.
struct Trajectory {
  double omega = 0.0;
  int steps_per_period = 0;
  std::vector<double> t, y, v;

  OscState back() const { return {t.back(), y.back(), v.back()}; }
};

// Classical fourth-order Runge-Kutta on y' = v, v' = -2 zeta v - gamma y^3 +
// F0 + F cos(omega t) with h = 2 pi / (omega steps_per_period).  Throws
// DivergenceError when |y| exceeds 1e6, std::invalid_argument for omega <= 0
// or steps_per_period < 500.
Trajectory integrate(const Params& pr, double omega, OscState init, int periods,
                     int steps_per_period = 2000);

// v^2/2 + gamma y^4/4 - F0 y, non-increasing along unforced damped motion.
double lyapunov(const Params& pr, const OscState& s);

struct Measurement {
  double a0 = 0.0;
  double a1 = 0.0;
};

// Mean and first-harmonic amplitude 2 |<y e^{-i omega t}>| over the last
// measure_periods whole periods of the trajectory.  Throws
// std::invalid_argument if the trajectory is shorter than that.
Measurement measure_steady(const Trajectory& tr, double omega, int measure_periods);

enum class Direction { up, down };
const char* direction_name(Direction d);

struct SweepRecord {
  double omega = 0.0;
  Direction direction = Direction::up;
  double a0_sim = 0.0;
  double a1_sim = 0.0;
};

struct SweepConfig {
  int steps_per_period = 2000;
  int transient_periods = 400;
  int measure_periods = 100;
  // Initial state of the upward sweep; by default the static equilibrium
  // (F0/gamma)^(1/3) at rest.
  bool seed_at_equilibrium = true;
  OscState seed{};
};

struct SweepResult {
  Params params;
  SweepConfig config;
  OscState seed;
  std::vector<SweepRecord> records;  // upward sweep, then downward
  std::vector<OscState> end_states;  // final state at each record
};

// Steady state after `transient` periods from `init`, measured over the next
// `measure` periods; the returned state is the final one, at a whole number
// of periods (t reset to 0, so the drive phase is continuous).
struct Settled {
  Measurement m;
  OscState end;
};
Settled settle(const Params& pr, double omega, OscState init, const SweepConfig& cfg);

// Sweeps omega upward over range, then back down, each point seeded with the
// final state of the previous one.  DivergenceError carries the offending
// omega and direction in its message.
SweepResult bifurcation_sweep(const Params& pr, steady::OmegaRange range, SweepConfig cfg = {});

// Independent sweeps over several parameter sets, parallel over the sets.
std::vector<SweepResult> bifurcation_sweeps(const std::vector<Params>& prs,
                                            steady::OmegaRange range, SweepConfig cfg = {},
                                            Execution exec = Execution::parallel);

// A jump of the simulated branch: between omega_before and omega_after the
// state (a0, a1) moves by more than jump_fraction of the diagonal of the
// sweep's (a0, a1) bounding box.
// With refine, the last omega still on the old branch is located by
// bisection, restarting from the stored state before the jump.
struct SweepJump {
  Direction direction = Direction::up;
  double omega_before = 0.0;
  double omega_after = 0.0;
  double omega = 0.0;  // refined branch endpoint
  double a1_before = 0.0;
  double a1_after = 0.0;
};
std::vector<SweepJump> sweep_jumps(const SweepResult& sweep, double jump_fraction = 0.15,
                                   int refine_steps = 0);

// Omega window where the two sweep directions disagree in a1 by more than
// rel_tol relative; empty (lo > hi) when they agree everywhere.
struct HysteresisWindow {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool exists() const { return lo <= hi; }
};
HysteresisWindow hysteresis_window(const SweepResult& sweep, double rel_tol = 0.05);

}  // namespace duffing::sim
