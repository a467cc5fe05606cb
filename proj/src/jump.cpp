#include "duffing/jump.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "duffing/coefficients.hpp"
#include "duffing/error.hpp"
#include "duffing/steady.hpp"
#include "duffing/sylvester.hpp"

namespace duffing::jump {

namespace {

constexpr double kPoleTol = 1e-10;
constexpr int kMaxBisections = 200;
constexpr int kMaxSubdivisionDepth = 4;
constexpr int kSubdivisions = 8;

RootSet converged_roots(const RealPoly& p, const char* what) {
  RootSet rs = all_roots(p);
  if (!rs.converged) throw NumericalError(std::string(what) + ": root iteration did not converge");
  return rs;
}

bool near_zero(double a, double b) {
  return std::fabs(a - b) <= kPoleTol * std::max(std::fabs(a), std::fabs(b));
}

bool bisection_done(double lo, double hi) {
  return hi - lo <= 1e-13 * std::max(1.0, std::fabs(hi));
}

}  // namespace

RealPoly build_jump_poly(const Params& pr) {
  const auto a = generated::jump_coefficients(pr.gamma, pr.zeta, pr.f_amp, pr.f0);
  return RealPoly(std::vector<double>(a.begin(), a.end()));
}

double omega_sq_at(const Params& pr, double a0) {
  const double g = pr.gamma, f0 = pr.f0, c = pr.f_amp * pr.f_amp;
  const double a3 = a0 * a0 * a0;
  if (a0 == 0.0 || near_zero(f0, 10.0 * g * a3) || near_zero(f0, g * a3)) {
    std::ostringstream os;
    os.precision(15);
    os << "omega_sq_at: pole at a0=" << a0;
    throw PoleError(os.str());
  }
  const double a6 = a3 * a3, a9 = a6 * a3, a12 = a6 * a6;
  const double g2 = g * g, g3 = g2 * g, g4 = g2 * g2;
  const double num = -50.0 * g4 * a12 + 95.0 * g3 * f0 * a9 +
                     (6.0 * c * g2 - 39.0 * g2 * f0 * f0) * a6 +
                     (3.0 * c * g * f0 - 7.0 * g * f0 * f0 * f0) * a3 + f0 * f0 * f0 * f0;
  const double d = f0 - g * a3;
  return num / (2.0 * a0 * (f0 - 10.0 * g * a3) * d * d);
}

std::vector<double> manifold_roots(const Params& pr) {
  const RealPoly j = build_jump_poly(pr);
  const RootSet rs = converged_roots(j, "jump polynomial");
  return real_roots(j, rs, kDefaultImagTol, Interval{0.0});
}

std::vector<JumpPoint> jump_points(const Params& pr) {
  std::vector<JumpPoint> out;
  for (double a0 : manifold_roots(pr)) {
    double w2 = 0.0;
    try {
      w2 = omega_sq_at(pr, a0);
    } catch (const PoleError&) {
      continue;
    }
    if (!(w2 > 0.0)) continue;
    const auto a1 = steady::a1_from_a0(pr, a0);
    if (!a1) continue;
    out.push_back({std::sqrt(w2), a0, *a1});
  }
  std::sort(out.begin(), out.end(),
            [](const JumpPoint& a, const JumpPoint& b) { return a.omega < b.omega; });
  return out;
}

int count_solutions(const Params& pr, double omega) {
  return static_cast<int>(steady::steady_states(pr, omega).size());
}

std::string_view parameter_name(Parameter p) {
  switch (p) {
    case Parameter::gamma: return "gamma";
    case Parameter::zeta: return "zeta";
    case Parameter::f_amp: return "f";
    case Parameter::f0: return "f0";
  }
  return "";
}

Parameter parse_parameter(std::string_view name) {
  for (Parameter p : {Parameter::gamma, Parameter::zeta, Parameter::f_amp, Parameter::f0}) {
    if (parameter_name(p) == name) return p;
  }
  throw std::invalid_argument("unknown parameter '" + std::string(name) +
                              "' (expected gamma, zeta, f or f0)");
}

double get(const Params& pr, Parameter p) {
  switch (p) {
    case Parameter::gamma: return pr.gamma;
    case Parameter::zeta: return pr.zeta;
    case Parameter::f_amp: return pr.f_amp;
    case Parameter::f0: return pr.f0;
  }
  return 0.0;
}

Params with(Params pr, Parameter p, double value) {
  switch (p) {
    case Parameter::gamma: pr.gamma = value; break;
    case Parameter::zeta: pr.zeta = value; break;
    case Parameter::f_amp: pr.f_amp = value; break;
    case Parameter::f0: pr.f0 = value; break;
  }
  return pr;
}

JumpManifoldSlice manifold_slice_2d(double gamma, double zeta, double f_amp,
                                    SampleRange f0_range, Execution exec) {
  if (f0_range.count < 2) throw std::invalid_argument("manifold_slice_2d: need >= 2 samples");
  const Params fixed{gamma, zeta, f_amp, 0.0};
  std::vector<std::vector<double>> roots(static_cast<std::size_t>(f0_range.count));
  for_each_index(roots.size(), exec, [&](std::size_t i) {
    roots[i] = manifold_roots(with(fixed, Parameter::f0, f0_range.at(static_cast<int>(i))));
  });
  JumpManifoldSlice slice{fixed, false, {}, {}};
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double f0 = f0_range.at(static_cast<int>(i));
    slice.roots_per_sample.push_back(static_cast<int>(roots[i].size()));
    for (double a0 : roots[i]) slice.points.push_back({f_amp, f0, a0});
  }
  return slice;
}

JumpManifoldSlice manifold_slice_3d(double gamma, double zeta, SampleRange f_range,
                                    SampleRange f0_range, Execution exec) {
  if (f_range.count < 2 || f0_range.count < 2) {
    throw std::invalid_argument("manifold_slice_3d: grid dimensions must be >= 2");
  }
  const Params fixed{gamma, zeta, 0.0, 0.0};
  const auto nf0 = static_cast<std::size_t>(f0_range.count);
  std::vector<std::vector<double>> roots(static_cast<std::size_t>(f_range.count) * nf0);
  for_each_index(roots.size(), exec, [&](std::size_t k) {
    Params pr = fixed;
    pr.f_amp = f_range.at(static_cast<int>(k / nf0));
    pr.f0 = f0_range.at(static_cast<int>(k % nf0));
    roots[k] = manifold_roots(pr);
  });
  JumpManifoldSlice slice{fixed, true, {}, {}};
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const double f = f_range.at(static_cast<int>(k / nf0));
    const double f0 = f0_range.at(static_cast<int>(k % nf0));
    slice.roots_per_sample.push_back(static_cast<int>(roots[k].size()));
    for (double a0 : roots[k]) slice.points.push_back({f, f0, a0});
  }
  return slice;
}

DiscriminantSigns jump_discriminant_signs(const Params& pr) {
  const RealPoly j = build_jump_poly(pr);
  const RootSet rs = converged_roots(j, "jump polynomial");
  DiscriminantSigns s;
  s.from_roots = discriminant_from_roots(j, rs).sign;

  // Balanced, normalized copy: x -> 2^e x and division by the largest
  // coefficient only multiply the discriminant by a positive factor.
  const auto c = j.coeffs();
  const int e = balancing_exponent(c);
  std::vector<double> b(c.begin(), c.end());
  double bmax = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    b[k] = std::ldexp(b[k], e * static_cast<int>(k));
    bmax = std::max(bmax, std::fabs(b[k]));
  }
  for (double& v : b) v /= bmax;
  const RealPoly scaled(b);
  const RealPoly ds = scaled.derivative();
  const SignedLog res = sylvester_det_numeric(scaled.coeffs(), ds.coeffs());
  const int n = scaled.degree();
  const int parity = (n * (n - 1) / 2) % 2 == 0 ? 1 : -1;
  s.from_sylvester = res.sign * parity * (scaled.lead() > 0 ? 1 : -1);
  return s;
}

namespace {

// Mean real part of the closest pair of near-real positive roots of J.
double coalescing_root(const Params& pr) {
  const RealPoly j = build_jump_poly(pr);
  const RootSet rs = all_roots(j);
  std::vector<std::complex<double>> cand;
  for (auto z : rs.roots) {
    if (z.real() > 0 && std::fabs(z.imag()) < 1e-3 * (1.0 + z.real())) cand.push_back(z);
  }
  double best = HUGE_VAL, a0 = 0.0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    for (std::size_t k = i + 1; k < cand.size(); ++k) {
      const double d = std::abs(cand[i] - cand[k]);
      if (d < best) {
        best = d;
        a0 = 0.5 * (cand[i].real() + cand[k].real());
      }
    }
  }
  return a0;
}

struct Sample {
  double value;
  int count;
};

class BorderSearch {
 public:
  BorderSearch(const Params& fixed, Parameter varied) : fixed_(fixed), varied_(varied) {}

  int count(double v) const {
    return static_cast<int>(jump_points(with(fixed_, varied_, v)).size());
  }

  // Bracket [lo, hi] with differing counts.
  void resolve(Sample lo, Sample hi, int depth, BorderScan& out) {
    const int s_lo = sign(lo.value), s_hi = sign(hi.value);
    if (s_lo != 0 && s_hi != 0 && s_lo != s_hi) {
      out.points.push_back(bisect(lo, hi, s_lo));
      return;
    }
    if (depth >= kMaxSubdivisionDepth) {
      out.unresolved.push_back({lo.value, hi.value});
      return;
    }
    Sample prev = lo;
    for (int k = 1; k <= kSubdivisions; ++k) {
      Sample next = hi;
      if (k < kSubdivisions) {
        const double v = lo.value + (hi.value - lo.value) * k / kSubdivisions;
        next = {v, count(v)};
      }
      if (next.count != prev.count) resolve(prev, next, depth + 1, out);
      prev = next;
    }
  }

 private:
  int sign(double v) {
    try {
      return jump_discriminant_signs(with(fixed_, varied_, v)).from_roots;
    } catch (const NumericalError&) {
      return 0;
    }
  }

  BorderPoint bisect(Sample lo, Sample hi, int s_lo) {
    BorderPoint bp;
    bp.param = varied_;
    bp.count_below = lo.count;
    bp.count_above = hi.count;
    double a = lo.value, b = hi.value;
    for (int it = 0; it < kMaxBisections && !bisection_done(a, b); ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      DiscriminantSigns s;
      try {
        s = jump_discriminant_signs(with(fixed_, varied_, mid));
      } catch (const NumericalError&) {
        break;
      }
      if (s.from_roots == 0) {
        a = b = mid;
        break;
      }
      ++bp.sylvester_checks;
      if (s.from_sylvester == s.from_roots) ++bp.sylvester_agreements;
      if (s.from_roots == s_lo) {
        a = mid;
      } else {
        b = mid;
      }
    }
    bp.value = 0.5 * (a + b);
    bp.a0_double = coalescing_root(with(fixed_, varied_, bp.value));
    return bp;
  }

  Params fixed_;
  Parameter varied_;
};

}  // namespace

BorderScan border_set(const Params& fixed, Parameter varied, SampleRange range, Execution exec) {
  if (!(range.hi > 0) || !(range.lo < range.hi) || !std::isfinite(range.hi) ||
      !std::isfinite(range.lo) || range.lo < 0) {
    throw std::invalid_argument("border_set: range must be a finite nonnegative interval");
  }
  if (range.count < 2) throw std::invalid_argument("border_set: need >= 2 samples");
  BorderSearch search(fixed, varied);
  BorderScan out;

  // Zero itself is a degenerate parameter value; the grid starts just above it.
  SampleRange grid = range;
  grid.lo = std::max(range.lo, range.hi * 1e-4);
  std::vector<Sample> samples(static_cast<std::size_t>(grid.count));
  for_each_index(samples.size(), exec, [&](std::size_t i) {
    const double v = grid.at(static_cast<int>(i));
    samples[i] = {v, search.count(v)};
  });

  if (range.lo == 0.0) {
    BorderPoint bp;
    bp.param = varied;
    bp.value = 0.0;
    bp.count_below = 0;
    bp.count_above = samples.front().count;
    bp.boundary = true;
    out.points.push_back(bp);
  }
  if (grid.lo > range.lo && range.lo > 0.0) {
    const Sample first{range.lo, search.count(range.lo)};
    if (first.count != samples.front().count) search.resolve(first, samples.front(), 0, out);
  }
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    if (samples[i].count != samples[i + 1].count) {
      search.resolve(samples[i], samples[i + 1], 0, out);
    }
  }
  std::stable_sort(out.points.begin(), out.points.end(),
                   [](const BorderPoint& a, const BorderPoint& b) { return a.value < b.value; });
  return out;
}

namespace {

std::vector<JumpPoint> by_a0(std::vector<JumpPoint> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const JumpPoint& a, const JumpPoint& b) { return a.a0 < b.a0; });
  return pts;
}

}  // namespace

std::vector<DoubleOmegaEvent> double_omega_points(double gamma, double zeta, double f_amp,
                                                  SampleRange f0_range, Execution exec) {
  if (!(f0_range.lo > 0) || !(f0_range.hi > f0_range.lo)) {
    throw std::invalid_argument("double_omega_points: F0 range must be positive");
  }
  if (f0_range.count < 2) throw std::invalid_argument("double_omega_points: need >= 2 samples");
  const Params fixed{gamma, zeta, f_amp, 0.0};
  auto at = [&](double f0) { return by_a0(jump_points(with(fixed, Parameter::f0, f0))); };

  std::vector<std::vector<JumpPoint>> samples(static_cast<std::size_t>(f0_range.count));
  for_each_index(samples.size(), exec, [&](std::size_t i) {
    samples[i] = at(f0_range.at(static_cast<int>(i)));
  });

  std::vector<DoubleOmegaEvent> events;
  for (std::size_t s = 0; s + 1 < samples.size(); ++s) {
    const auto& lo_pts = samples[s];
    const auto& hi_pts = samples[s + 1];
    if (lo_pts.size() != hi_pts.size()) continue;
    const std::size_t n = lo_pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) {
        const double g_lo = lo_pts[i].omega - lo_pts[k].omega;
        const double g_hi = hi_pts[i].omega - hi_pts[k].omega;
        if ((g_lo > 0) == (g_hi > 0)) continue;
        double a = f0_range.at(static_cast<int>(s)), b = f0_range.at(static_cast<int>(s + 1));
        std::vector<JumpPoint> last = lo_pts;
        bool ok = true;
        for (int it = 0; it < kMaxBisections && !bisection_done(a, b); ++it) {
          const double mid = 0.5 * (a + b);
          if (mid <= a || mid >= b) break;
          auto pts = at(mid);
          if (pts.size() != n) {
            ok = false;
            break;
          }
          const double g = pts[i].omega - pts[k].omega;
          if ((g > 0) == (g_lo > 0)) {
            a = mid;
          } else {
            b = mid;
          }
          last = std::move(pts);
        }
        if (!ok) continue;
        const double f0 = 0.5 * (a + b);
        auto pts = at(f0);
        if (pts.size() != n) pts = last;
        events.push_back({f0, 0.5 * (pts[i].omega + pts[k].omega), pts[i].a0, pts[k].a0});
      }
    }
  }
  std::sort(events.begin(), events.end(),
            [](const DoubleOmegaEvent& a, const DoubleOmegaEvent& b) { return a.f0 < b.f0; });
  return events;
}

}  // namespace duffing::jump
