#include "duffing/sim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "duffing/error.hpp"

namespace duffing::sim {

namespace {

constexpr double kBlowUp = 1e6;

// Fixed-step RK4 over whole periods.  The drive is only ever needed at
// multiples of h/2, so one period of cos values is tabulated once; with the
// time measured from init.t this keeps the forcing exact and cheap.
class Stepper {
 public:
  Stepper(const Params& pr, double omega, double t0, int spp)
      : pr_(pr), spp_(spp), h_(2.0 * std::numbers::pi / (omega * spp)), t0_(t0),
        drive_(static_cast<std::size_t>(2 * spp)) {
    for (int m = 0; m < 2 * spp; ++m) {
      drive_[static_cast<std::size_t>(m)] =
          pr.f_amp * std::cos(omega * t0 + std::numbers::pi * m / spp);
    }
  }

  double h() const { return h_; }

  // Advances `periods` periods; visit(k, y, v) sees every state, k = 0 first.
  template <class Visit>
  OscState run(OscState s, int periods, Visit&& visit) const {
    const long steps = static_cast<long>(periods) * spp_;
    const double g = pr_.gamma, z2 = 2.0 * pr_.zeta, f0 = pr_.f0;
    auto accel = [&](double y, double v, double drive) {
      return -z2 * v - g * y * y * y + f0 + drive;
    };
    double y = s.y, v = s.v;
    visit(0L, y, v);
    const std::size_t period2 = 2 * static_cast<std::size_t>(spp_);
    for (long k = 0; k < steps; ++k) {
      const std::size_t m = (2 * static_cast<std::size_t>(k)) % period2;
      const double d0 = drive_[m], d1 = drive_[m + 1], d2 = drive_[(m + 2) % period2];
      const double k1y = v, k1v = accel(y, v, d0);
      const double y2 = y + 0.5 * h_ * k1y, v2 = v + 0.5 * h_ * k1v;
      const double k2y = v2, k2v = accel(y2, v2, d1);
      const double y3 = y + 0.5 * h_ * k2y, v3 = v + 0.5 * h_ * k2v;
      const double k3y = v3, k3v = accel(y3, v3, d1);
      const double y4 = y + h_ * k3y, v4 = v + h_ * k3v;
      const double k4y = v4, k4v = accel(y4, v4, d2);
      y += h_ / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
      v += h_ / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      if (!(std::fabs(y) <= kBlowUp) || !std::isfinite(v)) {
        const double t = t0_ + static_cast<double>(k + 1) * h_;
        std::ostringstream os;
        os.precision(15);
        os << "integration diverged at t=" << t;
        throw DivergenceError(os.str(), t);
      }
      visit(k + 1, y, v);
    }
    return {t0_ + static_cast<double>(steps) * h_, y, v};
  }

 private:
  const Params& pr_;
  int spp_;
  double h_;
  double t0_;
  std::vector<double> drive_;
};

void check_inputs(double omega, int periods, int spp) {
  if (!(omega > 0)) throw std::invalid_argument("integrate: omega must be > 0");
  if (spp < 500) throw std::invalid_argument("integrate: steps_per_period must be >= 500");
  if (periods < 0) throw std::invalid_argument("integrate: periods must be >= 0");
}

}  // namespace

Trajectory integrate(const Params& pr, double omega, OscState init, int periods,
                     int steps_per_period) {
  check_inputs(omega, periods, steps_per_period);
  const Stepper st(pr, omega, init.t, steps_per_period);
  Trajectory tr;
  tr.omega = omega;
  tr.steps_per_period = steps_per_period;
  const std::size_t n = static_cast<std::size_t>(periods) * steps_per_period + 1;
  tr.t.reserve(n);
  tr.y.reserve(n);
  tr.v.reserve(n);
  st.run(init, periods, [&](long k, double y, double v) {
    tr.t.push_back(init.t + static_cast<double>(k) * st.h());
    tr.y.push_back(y);
    tr.v.push_back(v);
  });
  return tr;
}

double lyapunov(const Params& pr, const OscState& s) {
  return 0.5 * s.v * s.v + 0.25 * pr.gamma * s.y * s.y * s.y * s.y - pr.f0 * s.y;
}

Measurement measure_steady(const Trajectory& tr, double omega, int measure_periods) {
  if (measure_periods < 1) throw std::invalid_argument("measure_steady: need >= 1 period");
  const std::size_t window = static_cast<std::size_t>(measure_periods) * tr.steps_per_period;
  if (tr.y.size() < window + 1) {
    throw std::invalid_argument("measure_steady: trajectory shorter than the window");
  }
  // Rectangle rule over whole periods, final point excluded: exact for the
  // mean and the first harmonic of any band-limited periodic signal.
  const std::size_t start = tr.y.size() - 1 - window;
  double sum = 0.0;
  std::complex<double> proj = 0.0;
  for (std::size_t i = start; i < start + window; ++i) {
    sum += tr.y[i];
    proj += tr.y[i] * std::polar(1.0, -omega * tr.t[i]);
  }
  const double n = static_cast<double>(window);
  return {sum / n, 2.0 * std::abs(proj) / n};
}

const char* direction_name(Direction d) { return d == Direction::up ? "up" : "down"; }

Settled settle(const Params& pr, double omega, OscState init, const SweepConfig& cfg) {
  check_inputs(omega, cfg.transient_periods, cfg.steps_per_period);
  if (cfg.measure_periods < 1) throw std::invalid_argument("settle: need >= 1 measured period");
  init.t = 0.0;
  const Stepper st(pr, omega, 0.0, cfg.steps_per_period);
  OscState s = st.run(init, cfg.transient_periods, [](long, double, double) {});
  s.t = 0.0;  // whole periods elapsed, so the drive phase is back at 0

  const long window = static_cast<long>(cfg.measure_periods) * cfg.steps_per_period;
  const double dphi = 2.0 * std::numbers::pi / cfg.steps_per_period;
  double sum = 0.0;
  std::complex<double> proj = 0.0;
  s = st.run(s, cfg.measure_periods, [&](long k, double y, double) {
    if (k >= window) return;
    sum += y;
    proj += y * std::polar(1.0, -dphi * static_cast<double>(k % cfg.steps_per_period));
  });
  s.t = 0.0;
  const double n = static_cast<double>(window);
  return {{sum / n, 2.0 * std::abs(proj) / n}, s};
}

SweepResult bifurcation_sweep(const Params& pr, steady::OmegaRange range, SweepConfig cfg) {
  if (range.count < 2) throw std::invalid_argument("bifurcation_sweep: need >= 2 samples");
  if (!(range.lo > 0) || !(range.hi > range.lo)) {
    throw std::invalid_argument("bifurcation_sweep: omega range must lie in (0, inf)");
  }
  SweepResult out{pr, cfg, cfg.seed, {}, {}};
  if (cfg.seed_at_equilibrium) out.seed = {0.0, std::cbrt(pr.f0 / pr.gamma), 0.0};
  OscState s = out.seed;
  for (Direction dir : {Direction::up, Direction::down}) {
    for (int i = 0; i < range.count; ++i) {
      const double omega = range.at(dir == Direction::up ? i : range.count - 1 - i);
      Settled r;
      try {
        r = settle(pr, omega, s, cfg);
      } catch (const DivergenceError& e) {
        std::ostringstream os;
        os.precision(15);
        os << e.what() << " (omega=" << omega << ", sweep " << direction_name(dir) << ")";
        throw DivergenceError(os.str(), e.time());
      }
      out.records.push_back({omega, dir, r.m.a0, r.m.a1});
      out.end_states.push_back(r.end);
      s = r.end;
    }
  }
  return out;
}

std::vector<SweepResult> bifurcation_sweeps(const std::vector<Params>& prs,
                                            steady::OmegaRange range, SweepConfig cfg,
                                            Execution exec) {
  std::vector<SweepResult> out(prs.size());
  for_each_index(prs.size(), exec,
                 [&](std::size_t i) { out[i] = bifurcation_sweep(prs[i], range, cfg); });
  return out;
}

std::vector<SweepJump> sweep_jumps(const SweepResult& sweep, double jump_fraction,
                                   int refine_steps) {
  const auto& rec = sweep.records;
  std::vector<SweepJump> out;
  if (rec.empty()) return out;
  // Steps are measured in the (a0, a1) plane against the diagonal of the
  // sweep's bounding box.
  double a0_lo = HUGE_VAL, a0_hi = -HUGE_VAL, a1_lo = HUGE_VAL, a1_hi = -HUGE_VAL;
  for (const auto& r : rec) {
    a0_lo = std::min(a0_lo, r.a0_sim);
    a0_hi = std::max(a0_hi, r.a0_sim);
    a1_lo = std::min(a1_lo, r.a1_sim);
    a1_hi = std::max(a1_hi, r.a1_sim);
  }
  const double span = std::hypot(a0_hi - a0_lo, a1_hi - a1_lo);
  if (!(span > 0)) return out;
  for (std::size_t i = 0; i + 1 < rec.size(); ++i) {
    if (rec[i].direction != rec[i + 1].direction) continue;
    const double step =
        std::hypot(rec[i + 1].a0_sim - rec[i].a0_sim, rec[i + 1].a1_sim - rec[i].a1_sim);
    if (step <= jump_fraction * span) continue;
    SweepJump j{rec[i].direction, rec[i].omega, rec[i + 1].omega, rec[i].omega,
                rec[i].a1_sim, rec[i + 1].a1_sim};
    // The branch survives at w when settling there from the pre-jump state
    // stays closer to the old amplitude than to the new one.
    double on = rec[i].omega, off = rec[i + 1].omega;
    for (int k = 0; k < refine_steps; ++k) {
      const double mid = 0.5 * (on + off);
      const Settled r = settle(sweep.params, mid, sweep.end_states[i], sweep.config);
      if (std::fabs(r.m.a1 - j.a1_before) < std::fabs(r.m.a1 - j.a1_after)) {
        on = mid;
      } else {
        off = mid;
      }
    }
    j.omega = refine_steps > 0 ? 0.5 * (on + off) : on;
    out.push_back(j);
  }
  return out;
}

HysteresisWindow hysteresis_window(const SweepResult& sweep, double rel_tol) {
  HysteresisWindow w;
  std::vector<const SweepRecord*> up, down;
  for (const auto& r : sweep.records) (r.direction == Direction::up ? up : down).push_back(&r);
  for (const SweepRecord* u : up) {
    for (const SweepRecord* d : down) {
      if (u->omega != d->omega) continue;
      const double scale = std::max({u->a1_sim, d->a1_sim, 1e-9});
      if (std::fabs(u->a1_sim - d->a1_sim) > rel_tol * scale) {
        w.lo = std::min(w.lo, u->omega);
        w.hi = std::max(w.hi, u->omega);
      }
    }
  }
  if (w.lo > w.hi) w = HysteresisWindow{};
  return w;
}

}  // namespace duffing::sim
