#include "duffing/singular.hpp"

#include <cmath>
#include <stdexcept>

#include "duffing/error.hpp"

namespace duffing::singular {

std::array<double, 4> df_domega_factored(const Params& pr, double omega, double a0) {
  const double delta = pr.zeta;
  return {8.0 * a0, omega, pr.f0 - pr.gamma * a0 * a0 * a0,
          pr.f0 + a0 * (5.0 * pr.gamma * a0 * a0 - 4.0 * delta * delta - 2.0 * omega * omega)};
}

double f0_branch(const Params& pr, double omega, double a0) {
  return 2.0 * omega * omega * a0 + 4.0 * pr.zeta * pr.zeta * a0 -
         5.0 * pr.gamma * a0 * a0 * a0;
}

RealPoly singular_quartic(double zeta, double c) {
  const double z2 = zeta * zeta;
  const double z4 = z2 * z2, z6 = z4 * z2, z8 = z4 * z4, z10 = z8 * z2, z12 = z6 * z6;
  return RealPoly({512.0 * z12 - 240.0 * z6 * c + 45.0 * c * c,
                   -336.0 * c * z4 + 1792.0 * z10,
                   -96.0 * c * z2 + 2304.0 * z8,
                   1280.0 * z6,
                   256.0 * z4});
}

double a0sq_expression(double zeta, double gamma, double f_amp, double x) {
  if (!(gamma > 0) || !(f_amp > 0)) {
    throw std::domain_error("a0sq_expression: needs gamma > 0 and F > 0");
  }
  const double z2 = zeta * zeta;
  const double c = gamma * f_amp * f_amp;
  const double rhs = 16.0 * z2 * x * x * x + 64.0 * z2 * z2 * x * x +
                     (9.0 * c + 80.0 * z2 * z2 * z2) * x + 15.0 * c * z2 +
                     32.0 * z2 * z2 * z2 * z2;
  return rhs / (45.0 * c * gamma);
}

int descartes_sign_changes(const RealPoly& p) {
  int changes = 0;
  int last = 0;
  for (double v : p.coeffs()) {
    if (v == 0.0) continue;
    const int s = v > 0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

namespace {

double log_spaced(double lo, double hi, int n, int i) {
  if (n <= 1 || lo == hi) return lo;
  if (lo <= 0.0) return lo + (hi - lo) * i / (n - 1);
  return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
}

}  // namespace

double ScanGrid::zeta_at(int i) const { return log_spaced(zeta_lo, zeta_hi, n_zeta, i); }
double ScanGrid::c_at(int j) const { return log_spaced(c_lo, c_hi, n_c, j); }

ScanReport scan_no_singular(const ScanGrid& grid, Execution exec) {
  if (grid.n_zeta < 1 || grid.n_c < 1) throw std::invalid_argument("scan_no_singular: empty grid");
  if (!(grid.zeta_lo > 0) || grid.c_lo < 0) {
    throw std::invalid_argument("scan_no_singular: ranges must be positive");
  }
  const std::size_t total = static_cast<std::size_t>(grid.n_zeta) * grid.n_c;
  std::vector<std::vector<double>> positive(total);
  std::vector<char> cleared(total, 0);
  for_each_index(total, exec, [&](std::size_t k) {
    const int i = static_cast<int>(k / grid.n_c);
    const int j = static_cast<int>(k % grid.n_c);
    const RealPoly q = singular_quartic(grid.zeta_at(i), grid.c_at(j));
    if (descartes_sign_changes(q) == 0) {
      cleared[k] = 1;
      return;
    }
    positive[k] = real_roots(q, kDefaultImagTol, Interval{0.0, HUGE_VAL});
  });
  ScanReport report;
  report.grid = grid;
  report.checked = total;
  for (std::size_t k = 0; k < total; ++k) {
    report.descartes_cleared += cleared[k];
    const int i = static_cast<int>(k / grid.n_c);
    const int j = static_cast<int>(k % grid.n_c);
    for (double x : positive[k]) report.violations.push_back({grid.zeta_at(i), grid.c_at(j), x});
  }
  return report;
}

}  // namespace duffing::singular
