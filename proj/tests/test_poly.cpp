#include <doctest.h>

#include <algorithm>
#include <random>

#include "duffing/double_double.hpp"
#include "duffing/error.hpp"
#include "duffing/jump.hpp"
#include "duffing/real_poly.hpp"
#include "duffing/steady.hpp"
#include "duffing/sylvester.hpp"

using namespace duffing;

namespace {

RealPoly from_roots(const std::vector<double>& roots, double lead = 1.0) {
  std::vector<double> c = {lead};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return RealPoly(c);
}

int sylvester_disc_sign(const RealPoly& p) {
  const RealPoly dp = p.derivative();
  const int n = p.degree();
  const int parity = (n * (n - 1) / 2) % 2 == 0 ? 1 : -1;
  return sylvester_det_numeric(p.coeffs(), dp.coeffs()).sign * parity * (p.lead() > 0 ? 1 : -1);
}

}  // namespace

TEST_CASE("eval") {
  CHECK(RealPoly({-1, 0, 1}).eval(1.0) == 0.0);
  CHECK(RealPoly({0.0}).eval(3.7) == 0.0);
  CHECK(RealPoly({0.0}).is_zero());
  CHECK(RealPoly({1, 0, 0}).degree() == 0);

  const Params pr{0.0783, 0.025, 0.1, 0.4};
  const RealPoly f = steady::build_f_poly(pr, 0.576122891);
  const double a0 = 0.846633527;
  CHECK(std::fabs(f.eval(a0)) < 1e-8 * f.max_monomial(a0));
}

TEST_CASE("derivative and integral") {
  CHECK(RealPoly({5.0}).derivative().is_zero());
  const RealPoly d = RealPoly({0, 0, 0, 1}).derivative();
  REQUIRE(d.degree() == 2);
  CHECK(d[2] == 3.0);
  CHECK(d[0] == 0.0);

  const RealPoly j = jump::build_jump_poly(Params{});
  const RealPoly dj = j.derivative();
  CHECK(j.degree() == 21);
  CHECK(dj.degree() == 20);
  CHECK(dj[20] == 21.0 * j[21]);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> c(8);
    for (double& v : c) v = u(rng);
    const RealPoly p(c);
    const RealPoly back = p.integral().derivative();
    for (int k = 0; k <= p.degree(); ++k) CHECK(back[k] == doctest::Approx(p[k]).epsilon(1e-15));
  }
}

TEST_CASE("all_roots basic cases") {
  auto rs = all_roots(RealPoly({-1, 0, 1}));
  CHECK(rs.converged);
  auto re = real_roots(RealPoly({-1, 0, 1}));
  REQUIRE(re.size() == 2);
  CHECK(re[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(re[1] == doctest::Approx(1.0).epsilon(1e-14));

  const RealPoly cube = from_roots({2, 2, 2});
  rs = all_roots(cube);
  REQUIRE(rs.roots.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rs.multiplicity[i] == 3);
    CHECK(std::abs(rs.roots[i] - 2.0) < 1e-4);
  }
  const auto r2 = real_roots(cube, rs);
  REQUIRE(r2.size() == 1);
  CHECK(r2[0] == doctest::Approx(2.0).epsilon(1e-10));

  CHECK_THROWS_AS(all_roots(RealPoly({3.0})), std::domain_error);
  CHECK_THROWS_AS(real_roots(RealPoly()), std::domain_error);
}

TEST_CASE("real_roots domain filtering") {
  const Interval positive{0.0};
  CHECK(real_roots(RealPoly({1, 0, 1}), kDefaultImagTol, positive).empty());
  const auto r = real_roots(RealPoly({-4, 0, 1}), kDefaultImagTol, positive);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("jump polynomial roots include the tangency abscissae") {
  const auto roots = real_roots(jump::build_jump_poly(Params{}), kDefaultImagTol, Interval{0.0});
  for (double want : {0.846633527, 0.755260872, 1.583776750, 0.425889574}) {
    CAPTURE(want);
    CHECK(std::any_of(roots.begin(), roots.end(),
                      [&](double r) { return std::fabs(r - want) < 1e-6; }));
  }
}

TEST_CASE("response roots near a double-omega event") {
  const Params pr{0.0783, 0.025, 0.1, 0.301007};
  const RealPoly f = steady::build_f_poly(pr, 0.597114);
  const RootSet rs = all_roots(f);
  REQUIRE(rs.converged);
  // The double root may surface as a close pair or a tight complex pair.
  // Both tangencies sit at this omega, so both are near-double roots.
  for (double a0 : {0.679284, 1.411787}) {
    CAPTURE(a0);
    int near_double = 0;
    for (auto z : rs.roots) near_double += std::abs(z - a0) < 1e-3;
    CHECK(near_double == 2);
  }
}

TEST_CASE("every reported root has a small residual") {
  for (double f0 : {0.05, 0.4, 3.0}) {
    const RealPoly j = jump::build_jump_poly(Params{0.0783, 0.025, 0.1, f0});
    for (double r : real_roots(j)) CHECK(std::fabs(j.eval(r)) < 1e-10 * j.max_monomial(r));
  }
}

TEST_CASE("planted roots are recovered to 1e-10") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 11;
    std::vector<double> roots;
    while (static_cast<int>(roots.size()) < n) {
      const double r = u(rng);
      if (std::all_of(roots.begin(), roots.end(), [&](double s) { return std::fabs(s - r) > 0.2; })) {
        roots.push_back(r);
      }
    }
    const RealPoly p = from_roots(roots, 0.5 + trial % 3);
    const auto found = real_roots(p);
    std::sort(roots.begin(), roots.end());
    REQUIRE(found.size() == roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) CHECK(std::fabs(found[i] - roots[i]) < 1e-10);
  }
}

TEST_CASE("discriminant from roots") {
  const RealPoly p({-1, 0, 1});
  const auto d = discriminant_from_roots(p, all_roots(p));
  CHECK(d.value() == doctest::Approx(4.0).epsilon(1e-12));

  // A double root leaves a discriminant at rounding level relative to the
  // same polynomial with separated roots.
  const RealPoly sq = from_roots({1, 1});
  const auto ds = discriminant_from_roots(sq, all_roots(sq));
  CHECK((ds.is_zero() || ds.log_abs < std::log(1e-12)));

  CHECK(discriminant_from_roots(from_roots({1, 2, 3}), all_roots(from_roots({1, 2, 3}))).sign == 1);
  CHECK(discriminant_from_roots(RealPoly({1, 0, 1}), all_roots(RealPoly({1, 0, 1}))).sign == -1);
}

TEST_CASE("discriminant sign changes across the first F0 border") {
  const auto below = jump::jump_discriminant_signs(Params{0.0783, 0.025, 0.1, 0.0920});
  const auto above = jump::jump_discriminant_signs(Params{0.0783, 0.025, 0.1, 0.0922});
  CHECK(below.from_roots == -above.from_roots);
  CHECK(below.from_sylvester == below.from_roots);
  CHECK(above.from_sylvester == above.from_roots);
}

TEST_CASE("discriminant and Sylvester signs agree on random instances") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> deg(2, 8);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = deg(rng);
    std::vector<double> c(n + 1);
    for (double& v : c) v = u(rng);
    const RealPoly p(c);
    if (p.degree() < 2) continue;
    CAPTURE(trial);
    CHECK(discriminant_from_roots(p, all_roots(p)).sign == sylvester_disc_sign(p));
  }
}

TEST_CASE("double-double arithmetic is error free where it should be") {
  const DoubleDouble a = two_sum(1.0, 1e-20);
  CHECK(a.hi == 1.0);
  CHECK(a.lo == 1e-20);
  const DoubleDouble p = two_prod(1.0 + 0x1p-30, 1.0 - 0x1p-30);
  CHECK(p.hi == 1.0);
  CHECK(p.lo == -0x1p-60);
  const DoubleDouble third = DoubleDouble(1.0) / DoubleDouble(3.0);
  const DoubleDouble back = third * DoubleDouble(3.0);
  CHECK(std::fabs((back - DoubleDouble(1.0)).to_double()) < 1e-30);
}

TEST_CASE("balancing exponent equalizes coefficient magnitudes") {
  const std::vector<double> c = {1.0, 0.0, 0x1p-40};  // roots at +-2^20 i
  CHECK(balancing_exponent(c) == 20);
}
