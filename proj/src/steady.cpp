#include "duffing/steady.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "duffing/coefficients.hpp"
#include "duffing/error.hpp"

namespace duffing {

void Params::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(gamma) || !finite(zeta) || !finite(f_amp) || !finite(f0)) {
    throw std::invalid_argument("parameters must be finite");
  }
  if (gamma <= 0) throw std::invalid_argument("gamma must be > 0");
  if (zeta <= 0) throw std::invalid_argument("zeta must be > 0");
  if (f_amp < 0) throw std::invalid_argument("F must be >= 0");
  if (f0 < 0) throw std::invalid_argument("F0 must be >= 0");
}

std::string to_string(const Params& p) {
  std::ostringstream os;
  os.precision(15);
  os << "gamma=" << p.gamma << " zeta=" << p.zeta << " F=" << p.f_amp << " F0=" << p.f0;
  return os.str();
}

namespace steady {

RealPoly build_f_poly(const Params& pr, double omega) {
  if (!(omega > 0)) throw std::invalid_argument("build_f_poly: omega must be > 0");
  if (!(pr.gamma > 0)) throw std::invalid_argument("build_f_poly: gamma must be > 0");
  const auto c =
      generated::response_coefficients(pr.gamma, pr.zeta, pr.f_amp, pr.f0, omega * omega);
  return RealPoly(std::vector<double>(c.begin(), c.end()));
}

std::optional<double> a1_from_a0(const Params& pr, double a0) {
  if (a0 == 0.0) throw std::domain_error("a1_from_a0: a0 = 0 (symmetric oscillator)");
  double radicand = 2.0 * (pr.f0 - pr.gamma * a0 * a0 * a0) / (3.0 * pr.gamma * a0);
  if (radicand < kRadicandTol) return std::nullopt;
  return std::sqrt(std::max(radicand, 0.0));
}

double a0_from_a1(const Params& pr, double a1) {
  // A0^3 + 3 p A0 - q = 0 with p = A1^2/2, q = F0/gamma.  Cardano gives
  // A0 = Y - p/Y, Y^3 = T = q/2 + sqrt(q^2/4 + p^3); since T^2 - p^3 = q T the
  // same root is q T / (Y (Y^4 + p Y^2 + p^2)), a sum of positive terms.
  const double p = 0.5 * a1 * a1;
  const double q = pr.f0 / pr.gamma;
  const double t = 0.5 * q + std::sqrt(0.25 * q * q + p * p * p);
  if (t == 0.0) return 0.0;
  const double y = std::cbrt(t);
  const double y2 = y * y;
  double a0 = q * t / (y * (y2 * y2 + p * y2 + p * p));
  // One Newton step on the monotone cubic.
  const double r = a0 * a0 * a0 + 3.0 * p * a0 - q;
  const double dr = 3.0 * a0 * a0 + 3.0 * p;
  if (dr > 0) a0 -= r / dr;
  return a0;
}

double g_residual(const Params& pr, double omega, double a1) {
  const double a0 = a0_from_a1(pr, a1);
  const double a1sq = a1 * a1;
  const double detuning =
      3.0 * pr.gamma * a0 * a0 + 0.75 * pr.gamma * a1sq - omega * omega;
  return a1sq * detuning * detuning +
         4.0 * omega * omega * pr.zeta * pr.zeta * a1sq - pr.f_amp * pr.f_amp;
}

double theta_of(const Params& pr, double omega, double a0, double a1) {
  const double s = -2.0 * pr.zeta * a1 * omega;
  const double c = a1 * (-omega * omega + 3.0 * pr.gamma * a0 * a0 + 0.75 * pr.gamma * a1 * a1);
  return std::atan2(s, c);
}

BalanceResiduals balance_residuals(const Params& pr, const SteadyState& s) {
  const double g = pr.gamma;
  const double w2 = s.omega * s.omega;
  BalanceResiduals r{};
  const double t1 = -s.a1 * w2, t2 = 3 * g * s.a0 * s.a0 * s.a1, t3 = 0.75 * g * s.a1 * s.a1 * s.a1,
               t4 = -pr.f_amp * std::cos(s.theta);
  r.cosine = t1 + t2 + t3 + t4;
  r.cosine_scale = std::max({std::fabs(t1), std::fabs(t2), std::fabs(t3), std::fabs(t4)});
  const double u1 = -2 * pr.zeta * s.a1 * s.omega, u2 = -pr.f_amp * std::sin(s.theta);
  r.sine = u1 + u2;
  r.sine_scale = std::max(std::fabs(u1), std::fabs(u2));
  const double v1 = g * s.a0 * s.a0 * s.a0, v2 = 1.5 * g * s.a0 * s.a1 * s.a1, v3 = -pr.f0;
  r.mean = v1 + v2 + v3;
  r.mean_scale = std::max({std::fabs(v1), std::fabs(v2), std::fabs(v3)});
  return r;
}

std::vector<SteadyState> steady_states(const Params& pr, double omega, bool include_negative) {
  const RealPoly f = build_f_poly(pr, omega);
  const RootSet rs = all_roots(f);
  if (!rs.converged) {
    std::ostringstream os;
    os.precision(15);
    os << "response root iteration did not converge at omega=" << omega;
    throw NumericalError(os.str());
  }
  Interval domain;
  if (!include_negative) domain.lo = 0.0;
  std::vector<SteadyState> out;
  for (double a0 : real_roots(f, rs, kDefaultImagTol, domain)) {
    if (a0 == 0.0) continue;
    const auto a1 = a1_from_a0(pr, a0);
    if (!a1) continue;
    out.push_back({omega, a0, *a1, theta_of(pr, omega, a0, *a1)});
  }
  return out;
}

ResponseCurve response_curve(const Params& pr, OmegaRange range, Execution exec,
                             bool include_negative) {
  if (!(range.lo > 0) || !(range.hi >= range.lo)) {
    throw std::invalid_argument("response_curve: omega range must lie in (0, inf)");
  }
  if (range.count < 2) throw std::invalid_argument("response_curve: need >= 2 samples");

  std::vector<std::vector<SteadyState>> per_omega(static_cast<std::size_t>(range.count));
  for_each_index(per_omega.size(), exec, [&](std::size_t i) {
    per_omega[i] = steady_states(pr, range.at(static_cast<int>(i)), include_negative);
  });

  struct Track {
    int id;
    double a0;
    double motion;
  };
  std::vector<Track> active;
  int next_id = 0;
  ResponseCurve curve{pr, {}};
  for (const auto& states : per_omega) {
    std::vector<int> assigned(states.size(), -1);
    std::vector<double> moved(states.size(), -1.0);
    struct Candidate {
      double distance;
      std::size_t track, root;
    };
    std::vector<Candidate> candidates;
    for (std::size_t t = 0; t < active.size(); ++t) {
      for (std::size_t r = 0; r < states.size(); ++r) {
        candidates.push_back({std::fabs(states[r].a0 - active[t].a0), t, r});
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                return a.distance < b.distance ||
                       (a.distance == b.distance &&
                        (a.track < b.track || (a.track == b.track && a.root < b.root)));
              });
    std::vector<char> track_used(active.size(), 0);
    for (const auto& c : candidates) {
      if (track_used[c.track] || assigned[c.root] != -1) continue;
      const Track& t = active[c.track];
      // A track born at the previous sample has no motion history yet; it
      // takes its nearest root, which is how both halves of a fold get away
      // from their common birth point.
      if (t.motion >= 0.0) {
        const double threshold = 5.0 * std::max(t.motion, 1e-3 * (1.0 + std::fabs(t.a0)));
        if (c.distance > threshold) continue;
      }
      track_used[c.track] = 1;
      assigned[c.root] = t.id;
      moved[c.root] = c.distance;
    }
    std::vector<Track> next;
    for (std::size_t r = 0; r < states.size(); ++r) {
      if (assigned[r] == -1) assigned[r] = next_id++;
      next.push_back({assigned[r], states[r].a0, moved[r]});
      curve.samples.push_back(
          {states[r].omega, assigned[r], states[r].a0, states[r].a1, states[r].theta});
    }
    active = std::move(next);
  }
  std::stable_sort(curve.samples.begin(), curve.samples.end(),
                   [](const CurveSample& a, const CurveSample& b) {
                     return a.omega < b.omega || (a.omega == b.omega && a.branch < b.branch);
                   });
  return curve;
}

}  // namespace steady
}  // namespace duffing
