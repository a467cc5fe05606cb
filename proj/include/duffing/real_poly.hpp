#pragma once

#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "duffing/signed_log.hpp"

namespace duffing {

// Dense univariate polynomial with double coefficients, ascending powers.
// Trailing zeros are stripped on construction; the zero polynomial has an
// empty coefficient list and degree -1.
class RealPoly {
 public:
  RealPoly() = default;
  explicit RealPoly(std::vector<double> coeffs);
  RealPoly(std::initializer_list<double> coeffs) : RealPoly(std::vector<double>(coeffs)) {}

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const double> coeffs() const { return coeffs_; }
  double operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }
  double lead() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

  double eval(double x) const;
  std::complex<double> eval(std::complex<double> z) const;
  // Largest |c_k x^k| over the terms: the natural scale for residuals.
  double max_monomial(double x) const;

  RealPoly derivative() const;
  // Antiderivative with zero constant term.
  RealPoly integral() const;

 private:
  std::vector<double> coeffs_;
};

// log2 of the scale s minimizing the spread of log|c_k s^k| over the nonzero
// coefficients.
int balancing_exponent(std::span<const double> coeffs);

struct RootSet {
  std::vector<std::complex<double>> roots;
  // Roots whose inclusion discs overlap share a cluster id; multiplicity is
  // the cluster size, an estimate of the multiplicity of the true root.
  std::vector<int> cluster;
  std::vector<int> multiplicity;
  std::vector<double> residuals;
  bool converged = false;
  int iterations = 0;
};

// All complex roots by Aberth-Ehrlich simultaneous iteration with Newton
// polygon starting points on a balanced (x -> s x) copy of p, followed by
// Newton polishing of isolated roots.  Exact zero roots are split off first.
// Non-convergence is reported through RootSet::converged with the best roots
// found.  Throws std::domain_error for degree < 1.
RootSet all_roots(const RealPoly& p);

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains_open(double x) const { return x > lo && x < hi; }
};

inline constexpr double kDefaultImagTol = 1e-7;

// Roots with |Im| < imag_tol (1 + |Re|), projected onto the real axis, kept
// when strictly inside domain, merged within 1e-9 and sorted.  A cluster of
// roots whose centroid is real counts once.  Throws NumericalError if the
// root iteration did not converge and std::domain_error on the zero
// polynomial.
std::vector<double> real_roots(const RealPoly& p, double imag_tol = kDefaultImagTol,
                               Interval domain = {});
std::vector<double> real_roots(const RealPoly& p, const RootSet& rs,
                               double imag_tol = kDefaultImagTol, Interval domain = {});

// lead^(2n-2) prod_{i<j} (r_i - r_j)^2, accumulated as sign and log.
SignedLog discriminant_from_roots(const RealPoly& p, const RootSet& rs);

}  // namespace duffing
