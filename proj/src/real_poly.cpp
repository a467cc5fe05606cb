#include "duffing/real_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "duffing/error.hpp"

namespace duffing {

using cplx = std::complex<double>;

RealPoly::RealPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double RealPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cplx RealPoly::eval(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double RealPoly::max_monomial(double x) const {
  double m = 0.0;
  double xp = 1.0;
  for (double c : coeffs_) {
    m = std::max(m, std::fabs(c * xp));
    xp *= x;
  }
  return m;
}

RealPoly RealPoly::derivative() const {
  if (coeffs_.size() <= 1) return RealPoly();
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = static_cast<double>(k + 1) * coeffs_[k + 1];
  return RealPoly(std::move(d));
}

RealPoly RealPoly::integral() const {
  if (coeffs_.empty()) return RealPoly();
  std::vector<double> out(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return RealPoly(std::move(out));
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 200;
constexpr double kStepTol = 1e-13;

}  // namespace

// The spread is convex and piecewise linear in log s, so golden-section
// search suffices.
int balancing_exponent(std::span<const double> a) {
  std::vector<std::pair<double, double>> pts;  // (k, log2|a_k|)
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != 0.0) pts.emplace_back(static_cast<double>(k), std::log2(std::fabs(a[k])));
  }
  auto spread = [&](double t) {
    double hi = -HUGE_VAL, lo = HUGE_VAL;
    for (auto [k, l] : pts) {
      hi = std::max(hi, l + k * t);
      lo = std::min(lo, l + k * t);
    }
    return hi - lo;
  };
  double lo = -1100.0, hi = 1100.0;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = spread(x1), f2 = spread(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-3; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = spread(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = spread(x2);
    }
  }
  return static_cast<int>(std::lround(0.5 * (lo + hi)));
}

namespace {

// Starting points from the upper convex hull of (k, log|b_k|): each hull
// edge from i to j contributes j - i points on a circle of the radius that
// edge predicts.
std::vector<cplx> newton_polygon_start(const std::vector<double>& b) {
  const int n = static_cast<int>(b.size()) - 1;
  std::vector<int> hull;
  auto logabs = [&](int k) {
    return b[k] == 0.0 ? -HUGE_VAL : std::log(std::fabs(b[k]));
  };
  for (int k = 0; k <= n; ++k) {
    if (b[k] == 0.0) continue;
    while (hull.size() >= 2) {
      const int i = hull[hull.size() - 2];
      const int j = hull.back();
      // Drop j if it lies on or below the segment i-k.
      const double cross = (j - i) * (logabs(k) - logabs(i)) - (k - i) * (logabs(j) - logabs(i));
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  std::vector<cplx> z;
  z.reserve(n);
  constexpr double kSigma = 0.7;
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const int i = hull[e];
    const int j = hull[e + 1];
    const int count = j - i;
    const double radius = std::exp((logabs(i) - logabs(j)) / count);
    for (int q = 0; q < count; ++q) {
      const double angle = 2.0 * std::numbers::pi * q / count +
                           2.0 * std::numbers::pi * static_cast<double>(i) / n + kSigma;
      z.push_back(std::polar(radius, angle));
    }
  }
  return z;
}

struct Evaluation {
  cplx newton;         // p / p'
  bool at_noise_floor;  // |p(z)| below its rounding-error bound
};

// p/p' at z, using the reversed polynomial for |z| > 1 to keep Horner stable.
Evaluation evaluate_newton(const std::vector<double>& b, cplx z) {
  const int n = static_cast<int>(b.size()) - 1;
  cplx p = 0.0, dp = 0.0;
  double bound = 0.0;
  if (std::abs(z) <= 1.0) {
    const double az = std::abs(z);
    for (int k = n; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + b[k];
      bound = bound * az + std::fabs(b[k]);
    }
    const bool floor = std::abs(p) <= 8.0 * kEps * bound;
    if (p == 0.0) return {0.0, true};
    if (dp == 0.0) return {cplx(kEps * (1.0 + std::abs(z))), floor};
    return {p / dp, floor};
  }
  const cplx w = 1.0 / z;
  const double aw = std::abs(w);
  for (int k = 0; k <= n; ++k) {
    dp = dp * w + p;
    p = p * w + b[k];
    bound = bound * aw + std::fabs(b[k]);
  }
  const bool floor = std::abs(p) <= 8.0 * kEps * bound;
  if (p == 0.0) return {0.0, true};
  // p(z) = z^n rev(w), p'(z)/p(z) = (n - w rev'(w)/rev(w)) / z
  const cplx ratio = (static_cast<double>(n) - w * dp / p) * w;
  if (ratio == 0.0) return {cplx(kEps * (1.0 + std::abs(z))), floor};
  return {1.0 / ratio, floor};
}

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

}  // namespace

RootSet all_roots(const RealPoly& p) {
  if (p.degree() < 1) throw std::domain_error("all_roots: degree < 1");
  const auto c = p.coeffs();
  const int n = p.degree();

  std::size_t zeros = 0;
  while (c[zeros] == 0.0) ++zeros;
  std::vector<double> a(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end());
  const int m = static_cast<int>(a.size()) - 1;

  RootSet rs;
  rs.roots.assign(zeros, cplx(0.0));
  rs.converged = true;

  if (m >= 1) {
    const int scale_exp = balancing_exponent(a);
    std::vector<double> b(a.size());
    double bmax = 0.0;
    for (int k = 0; k <= m; ++k) {
      b[k] = std::ldexp(a[k], scale_exp * k);
      bmax = std::max(bmax, std::fabs(b[k]));
    }
    for (double& v : b) v /= bmax;

    std::vector<cplx> z = newton_polygon_start(b);
    std::vector<char> done(m, 0);
    int it = 0;
    for (; it < kMaxIterations; ++it) {
      bool all_done = true;
      for (int i = 0; i < m; ++i) {
        if (done[i]) continue;
        const Evaluation ev = evaluate_newton(b, z[i]);
        if (ev.at_noise_floor && ev.newton == 0.0) {
          done[i] = 1;
          continue;
        }
        cplx sum = 0.0;
        for (int j = 0; j < m; ++j) {
          if (j != i) sum += 1.0 / (z[i] - z[j]);
        }
        const cplx step = ev.newton / (1.0 - ev.newton * sum);
        z[i] -= step;
        if (std::abs(step) <= kStepTol * std::abs(z[i]) || ev.at_noise_floor) {
          done[i] = 1;
        } else {
          all_done = false;
        }
      }
      if (all_done) break;
    }
    rs.iterations = it + 1;
    rs.converged = std::all_of(done.begin(), done.end(), [](char d) { return d != 0; });
    for (cplx& r : z) rs.roots.push_back(r * std::ldexp(1.0, scale_exp));
  }

  // Inclusion radii n |p(z_i)| / |a_n prod_{j != i}(z_i - z_j)|, in logs.
  const std::size_t total = rs.roots.size();
  std::vector<double> radius(total, 0.0);
  for (std::size_t i = 0; i < total; ++i) {
    const double pv = std::abs(p.eval(rs.roots[i]));
    if (pv == 0.0) continue;
    double log_den = std::log(std::fabs(p.lead()));
    bool coincident = false;
    for (std::size_t j = 0; j < total; ++j) {
      if (j == i) continue;
      const double d = std::abs(rs.roots[i] - rs.roots[j]);
      if (d == 0.0) {
        coincident = true;
        break;
      }
      log_den += std::log(d);
    }
    radius[i] = coincident ? 0.0 : std::exp(std::log(n * pv) - log_den);
  }
  std::vector<int> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = i + 1; j < total; ++j) {
      if (std::abs(rs.roots[i] - rs.roots[j]) <= radius[i] + radius[j]) {
        parent[find_root(parent, static_cast<int>(i))] = find_root(parent, static_cast<int>(j));
      }
    }
  }
  std::vector<int> size(total, 0);
  for (std::size_t i = 0; i < total; ++i) ++size[find_root(parent, static_cast<int>(i))];

  const RealPoly dp = p.derivative();
  rs.cluster.resize(total);
  rs.multiplicity.resize(total);
  rs.residuals.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    const int root = find_root(parent, static_cast<int>(i));
    rs.cluster[i] = root;
    rs.multiplicity[i] = size[root];
    if (size[root] == 1) {
      // Newton polish on the original coefficients; keep only improvements.
      cplx zi = rs.roots[i];
      double res = std::abs(p.eval(zi));
      for (int k = 0; k < 3 && res > 0.0; ++k) {
        const cplx d = dp.eval(zi);
        if (d == 0.0) break;
        const cplx next = zi - p.eval(zi) / d;
        const double next_res = std::abs(p.eval(next));
        if (!(next_res < res)) break;
        zi = next;
        res = next_res;
      }
      rs.roots[i] = zi;
    }
    rs.residuals[i] = std::abs(p.eval(rs.roots[i]));
  }
  return rs;
}

namespace {

// A root of multiplicity m is a simple root of the (m-1)-th derivative;
// Newton there recovers the digits the scattered cluster loses.  The result
// is kept only if it stays inside the cluster.
double polish_multiple(const RealPoly& p, int m, double x0, double radius) {
  RealPoly d = p;
  for (int k = 1; k < m; ++k) d = d.derivative();
  if (d.degree() < 1) return x0;
  const RealPoly dd = d.derivative();
  double x = x0;
  for (int it = 0; it < 20; ++it) {
    const double slope = dd.eval(x);
    if (slope == 0.0) break;
    const double step = d.eval(x) / slope;
    x -= step;
    if (!(std::fabs(x - x0) <= 2.0 * radius)) return x0;
    if (std::fabs(step) <= 1e-16 * (1.0 + std::fabs(x))) break;
  }
  return x;
}

}  // namespace

std::vector<double> real_roots(const RealPoly& p, const RootSet& rs, double imag_tol,
                               Interval domain) {
  std::vector<double> out;
  std::vector<char> seen(rs.roots.size(), 0);
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    const int cid = rs.cluster.empty() ? static_cast<int>(i) : rs.cluster[i];
    cplx centroid = 0.0;
    int members = 0;
    if (rs.cluster.empty()) {
      centroid = rs.roots[i];
      members = 1;
    } else {
      if (seen[static_cast<std::size_t>(cid)]) continue;
      seen[static_cast<std::size_t>(cid)] = 1;
      for (std::size_t j = 0; j < rs.roots.size(); ++j) {
        if (rs.cluster[j] == cid) {
          centroid += rs.roots[j];
          ++members;
        }
      }
      centroid /= static_cast<double>(members);
    }
    // A cluster that overlaps its own mirror image is conjugation-invariant
    // and so holds a real root, even when the iterates of a multiple root
    // scatter asymmetrically.
    double radius = 0.0;
    if (members > 1) {
      for (std::size_t j = 0; j < rs.roots.size(); ++j) {
        if (rs.cluster[j] == cid) radius = std::max(radius, std::abs(rs.roots[j] - centroid));
      }
    }
    const double im = std::fabs(centroid.imag());
    if (im >= imag_tol * (1.0 + std::fabs(centroid.real())) && im > radius) continue;
    double x = centroid.real();
    if (members > 1) x = polish_multiple(p, members, x, std::max(radius, 1e-12 * (1.0 + std::fabs(x))));
    if (!domain.contains_open(x)) continue;
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  std::vector<double> merged;
  for (double r : out) {
    if (!merged.empty() && r - merged.back() <= 1e-9) continue;
    merged.push_back(r);
  }
  return merged;
}

std::vector<double> real_roots(const RealPoly& p, double imag_tol, Interval domain) {
  if (p.is_zero()) throw std::domain_error("real_roots: zero polynomial");
  if (p.degree() == 0) return {};
  const RootSet rs = all_roots(p);
  if (!rs.converged) throw NumericalError("real_roots: root iteration did not converge");
  return real_roots(p, rs, imag_tol, domain);
}

SignedLog discriminant_from_roots(const RealPoly& p, const RootSet& rs) {
  const std::size_t n = rs.roots.size();
  SignedLog out = SignedLog::from(1.0);
  if (n >= 1) {
    const double lead = p.lead();
    out.log_abs = static_cast<double>(2 * n - 2) * std::log(std::fabs(lead));
  }
  double phase = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx d = rs.roots[i] - rs.roots[j];
      if (d == 0.0) return SignedLog::zero();
      out.log_abs += 2.0 * std::log(std::abs(d));
      phase += 2.0 * std::arg(d);
    }
  }
  const double re = std::cos(phase);
  if (std::fabs(std::sin(phase)) > 1e-6) {
    // Scattered iterates of a multiple root break conjugate symmetry; the
    // discriminant is then zero to working accuracy.
    for (int m : rs.multiplicity) {
      if (m > 1) return SignedLog::zero();
    }
    throw NumericalError("discriminant_from_roots: non-real product (roots not conjugate-closed)");
  }
  out.sign = re > 0 ? 1 : -1;
  return out;
}

}  // namespace duffing
