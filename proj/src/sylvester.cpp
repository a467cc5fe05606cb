#include "duffing/sylvester.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "duffing/double_double.hpp"

namespace duffing {

namespace {

std::span<const double> trimmed(std::span<const double> p) {
  std::size_t n = p.size();
  while (n > 0 && p[n - 1] == 0.0) --n;
  return p.first(n);
}

}  // namespace

SylvesterMatrix build_sylvester(std::span<const double> a_in, std::span<const double> b_in) {
  const auto a = trimmed(a_in);
  const auto b = trimmed(b_in);
  if (a.size() < 2 || b.size() < 2) {
    throw std::domain_error("build_sylvester: both polynomials need degree >= 1");
  }
  const std::size_t n = a.size() - 1;
  const std::size_t m = b.size() - 1;
  SylvesterMatrix s;
  s.size = n + m;
  s.entries.assign(s.size * s.size, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k <= n; ++k) s.entries[i * s.size + i + k] = a[n - k];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k <= m; ++k) s.entries[(m + i) * s.size + i + k] = b[m - k];
  }
  return s;
}

SignedLog sylvester_det_numeric(std::span<const double> a_in, std::span<const double> b_in) {
  const auto a = trimmed(a_in);
  const auto b = trimmed(b_in);
  if (a.empty() || b.empty() || std::fabs(a.back()) <= 1e-300 ||
      std::fabs(b.back()) <= 1e-300) {
    throw std::domain_error("sylvester_det_numeric: vanishing leading coefficient");
  }
  const SylvesterMatrix s = build_sylvester(a, b);
  const std::size_t n = s.size;
  std::vector<DoubleDouble> m(n * n);
  long double log2_scale = 0.0L;
  for (std::size_t r = 0; r < n; ++r) {
    double row_max = 0.0;
    for (std::size_t c = 0; c < n; ++c) row_max = std::max(row_max, std::fabs(s(r, c)));
    int e = 0;
    std::frexp(row_max, &e);
    log2_scale += e;
    for (std::size_t c = 0; c < n; ++c) m[r * n + c] = std::ldexp(s(r, c), -e);
  }

  int sign = 1;
  long double log2_abs = log2_scale;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (abs(m[pivot * n + k]) < abs(m[r * n + k])) pivot = r;
    }
    if (is_zero(m[pivot * n + k])) return SignedLog::zero();
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m[k * n + c], m[pivot * n + c]);
      sign = -sign;
    }
    const DoubleDouble p = m[k * n + k];
    if (p.hi < 0) sign = -sign;
    log2_abs += std::log2(std::fabs(p.hi)) + std::log1p(p.lo / p.hi) / std::log(2.0);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (is_zero(m[r * n + k])) continue;
      const DoubleDouble factor = m[r * n + k] / p;
      for (std::size_t c = k + 1; c < n; ++c) {
        m[r * n + c] = m[r * n + c] - factor * m[k * n + c];
      }
      m[r * n + k] = 0.0;
    }
  }
  return {sign, static_cast<double>(log2_abs * 0.6931471805599453094L)};
}

}  // namespace duffing
