#include <doctest.h>

#include <cmath>
#include <numbers>

#include "duffing/error.hpp"
#include "duffing/jump.hpp"
#include "duffing/sim.hpp"
#include "duffing/steady.hpp"

using namespace duffing;
using namespace duffing::sim;

namespace {

const Params kRef{0.0783, 0.025, 0.1, 0.4};

// Shortened settings for sweeps inside unit tests.
SweepConfig quick() {
  SweepConfig c;
  c.steps_per_period = 500;
  c.transient_periods = 200;
  c.measure_periods = 40;
  return c;
}

// Relative a1 distance to the nearest steady state at omega.
double branch_distance(const Params& pr, double omega, double a1) {
  double best = HUGE_VAL;
  for (const auto& s : steady::steady_states(pr, omega)) {
    best = std::min(best, std::fabs(a1 - s.a1) / s.a1);
  }
  return best;
}

}  // namespace

TEST_CASE("equilibrium is a fixed point of the integrator") {
  const double ystar = 1.4;
  const Params pr{0.0783, 0.025, 0.0, 0.0783 * ystar * ystar * ystar};
  const Trajectory tr = integrate(pr, 0.7, {0.0, ystar, 0.0}, 100, 500);
  double worst = 0.0;
  for (double y : tr.y) worst = std::max(worst, std::fabs(y - ystar));
  CHECK(worst < 1e-10);
  CHECK(tr.y.size() == 100 * 500 + 1);
}

TEST_CASE("overdamped relaxation approaches the equilibrium monotonically") {
  const Params pr{0.0783, 5.0, 0.0, 0.4};
  const double ystar = std::cbrt(0.4 / 0.0783);
  const Trajectory tr = integrate(pr, 1.0, {0.0, ystar + 1.0, 0.0}, 60, 500);
  bool monotone = true;
  for (std::size_t i = 1; i < tr.y.size(); ++i) {
    monotone &= std::fabs(tr.y[i] - ystar) <= std::fabs(tr.y[i - 1] - ystar) + 1e-14;
  }
  CHECK(monotone);
  CHECK(std::fabs(tr.y.back() - ystar) < 1e-3);
}

TEST_CASE("fourth-order convergence") {
  const OscState init{0.0, 1.0, 0.3};
  auto end = [&](int spp) { return integrate(kRef, 0.65, init, 5, spp).back(); };
  const OscState ref = end(8 * 2000);
  const double e1 = std::hypot(end(1000).y - ref.y, end(1000).v - ref.v);
  const double e2 = std::hypot(end(2000).y - ref.y, end(2000).v - ref.v);
  const double ratio = e1 / e2;
  CAPTURE(ratio);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("integrate rejects bad input and detects divergence") {
  CHECK_THROWS_AS(integrate(kRef, 0.0, {}, 1), std::invalid_argument);
  CHECK_THROWS_AS(integrate(kRef, 0.5, {}, 1, 499), std::invalid_argument);
  const Params wild{0.0783, 0.025, 0.1, 0.4};
  // Starting far out, the cubic restoring force overwhelms an explicit step.
  CHECK_THROWS_AS(integrate(wild, 0.5, {0.0, 1e4, 0.0}, 1, 500), DivergenceError);
}

TEST_CASE("measure_steady on synthetic signals") {
  const double omega = 0.8;
  const int spp = 1000, periods = 5;
  Trajectory tr;
  tr.omega = omega;
  tr.steps_per_period = spp;
  const double h = 2 * std::numbers::pi / (omega * spp);
  for (int k = 0; k <= periods * spp; ++k) {
    const double t = 3.0 + k * h;
    tr.t.push_back(t);
    tr.y.push_back(0.5 + 2.0 * std::cos(omega * t + 1.0) + 0.3 * std::cos(2 * omega * t));
    tr.v.push_back(0.0);
  }
  const Measurement m = measure_steady(tr, omega, 3);
  CHECK(std::fabs(m.a0 - 0.5) < 1e-10);
  CHECK(std::fabs(m.a1 - 2.0) < 1e-10);

  for (double& y : tr.y) y = 1.0;
  const Measurement c = measure_steady(tr, omega, 3);
  CHECK(std::fabs(c.a0 - 1.0) < 1e-12);
  CHECK(c.a1 < 1e-12);
  CHECK_THROWS_AS(measure_steady(tr, omega, 6), std::invalid_argument);
}

TEST_CASE("Lyapunov function does not increase without forcing") {
  const Params pr{0.0783, 0.025, 0.0, 0.4};
  const Trajectory tr = integrate(pr, 0.6, {0.0, 3.0, -0.5}, 30, 1000);
  double worst = -HUGE_VAL;
  for (std::size_t i = 1; i < tr.y.size(); ++i) {
    const double dv = lyapunov(pr, {tr.t[i], tr.y[i], tr.v[i]}) -
                      lyapunov(pr, {tr.t[i - 1], tr.y[i - 1], tr.v[i - 1]});
    worst = std::max(worst, dv);
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("settled steady state lies near an asymptotic branch away from resonance") {
  // Omega = 0.3 sits well below the fold region, on the single branch.
  const Settled s = settle(kRef, 0.3, {0.0, std::cbrt(0.4 / 0.0783), 0.0}, SweepConfig{});
  const auto states = steady::steady_states(kRef, 0.3);
  REQUIRE(states.size() == 1);
  CHECK(std::fabs(s.m.a1 - states[0].a1) / states[0].a1 < 0.03);
  CHECK(std::fabs(s.m.a0 - states[0].a0) / states[0].a0 < 0.03);
}

TEST_CASE("superharmonic resonance near omega = 0.4") {
  // Omega = 0.4 is close to half the small-oscillation frequency
  // sqrt(3 gamma A0^2) ~ 0.83, where the quadratic part of the cubic force
  // drives the second harmonic resonantly.  The first-harmonic ansatz has no
  // such term, so the simulated a1 departs from it by far more than 3% here.
  const Settled s = settle(kRef, 0.4, {0.0, std::cbrt(0.4 / 0.0783), 0.0}, SweepConfig{});
  const double d = branch_distance(kRef, 0.4, s.m.a1);
  MESSAGE("relative a1 gap at omega = 0.4: " << d);
  CHECK(d > 0.03);
}

TEST_CASE("sweep without forcing stays at rest") {
  const Params pr{0.0783, 0.025, 0.0, 0.4};
  const SweepResult r = bifurcation_sweep(pr, {0.4, 1.0, 6}, quick());
  REQUIRE(r.records.size() == 12);
  for (const auto& rec : r.records) {
    CHECK(rec.a1_sim < 1e-9);
    CHECK(rec.a0_sim == doctest::Approx(std::cbrt(0.4 / 0.0783)).epsilon(1e-9));
  }
  CHECK_FALSE(hysteresis_window(r).exists());
  CHECK(sweep_jumps(r).empty());
}

TEST_CASE("sweep records follow the protocol") {
  const SweepResult r = bifurcation_sweep(kRef, {0.3, 0.5, 5}, quick());
  REQUIRE(r.records.size() == 10);
  for (int i = 0; i < 5; ++i) {
    CHECK(r.records[i].direction == Direction::up);
    CHECK(r.records[5 + i].direction == Direction::down);
    CHECK(r.records[i].omega == r.records[9 - i].omega);
  }
  for (const auto& rec : r.records) CHECK(rec.a1_sim >= 0.0);
  CHECK(r.seed.y == doctest::Approx(std::cbrt(0.4 / 0.0783)));
  CHECK_THROWS_AS(bifurcation_sweep(kRef, {0.3, 0.5, 1}, quick()), std::invalid_argument);
}

TEST_CASE("divergence carries omega and direction") {
  SweepConfig c = quick();
  c.seed_at_equilibrium = false;
  c.seed = {0.0, 1e4, 0.0};
  try {
    bifurcation_sweep(kRef, {0.5, 0.6, 2}, c);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("omega=0.5") != std::string::npos);
    CHECK(msg.find("up") != std::string::npos);
  }
}

TEST_CASE("hysteresis exists exactly when there are vertical tangencies") {
  struct Case {
    Params pr;
    double lo, hi;
    bool folds;
  };
  // Sets on either side of the F0 borders 0.0921, 0.7385 and 6.532 and a heavily
  // damped one.
  const Case cases[] = {
      {{0.0783, 0.025, 0.1, 0.4}, 0.4, 1.0, true},
      {{0.0783, 0.025, 0.1, 0.05}, 0.2, 0.8, true},
      {{0.0783, 0.025, 0.1, 1.5}, 0.9, 1.4, true},
      {{0.0783, 0.025, 0.1, 8.0}, 1.5, 3.0, false},
      {{0.0783, 2.0, 0.1, 0.4}, 0.4, 1.0, false},
  };
  for (const Case& c : cases) {
    CAPTURE(c.pr.f0);
    CAPTURE(c.pr.zeta);
    const bool folds = !jump::jump_points(c.pr).empty();
    CHECK(folds == c.folds);
    const SweepResult r = bifurcation_sweep(c.pr, {c.lo, c.hi, 61}, quick());
    const HysteresisWindow w = hysteresis_window(r);
    CHECK(w.exists() == folds);
  }
}
