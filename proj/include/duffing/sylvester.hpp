#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "duffing/signed_log.hpp"

namespace duffing {

// (m+n) x (m+n) Sylvester matrix of a (degree n) and b (degree m), row-major.
// Rows 0..m-1 hold a's coefficients from the leading one down, shifted right
// by the row index; rows m..m+n-1 hold b's likewise.
struct SylvesterMatrix {
  std::size_t size = 0;
  std::vector<double> entries;

  double operator()(std::size_t r, std::size_t c) const { return entries[r * size + c]; }
};

// Coefficient lists are ascending (index = power) and must have a nonzero
// last entry.
SylvesterMatrix build_sylvester(std::span<const double> a, std::span<const double> b);

// det(Sylvester(a, b)) = Res(a, b) by partially pivoted elimination in
// double-double arithmetic.  Rows are pre-scaled by powers of two to unit
// maximum magnitude and the scaling is folded back into log_abs, so the sign
// is that of the true determinant.  Throws std::domain_error if either
// leading coefficient has magnitude <= 1e-300.
SignedLog sylvester_det_numeric(std::span<const double> a, std::span<const double> b);

}  // namespace duffing
