#include <doctest.h>

#include <random>
#include <set>

#include "duffing/coefficients.hpp"
#include "duffing/derivation.hpp"
#include "duffing/rational_poly.hpp"
#include "duffing/sylvester.hpp"

using namespace duffing::algebra;

namespace {

RatPoly V(Symbol s, unsigned k = 1) { return RatPoly::variable(s, k); }
RatPoly Q(long n, long d = 1) { return RatPoly(mpq_class(n, d)); }

const RatPoly a0 = V(Symbol::A0), a1sq = V(Symbol::A1sq), X = V(Symbol::X);
const RatPoly g = V(Symbol::gamma), z = V(Symbol::zeta), F = V(Symbol::F), F0 = V(Symbol::F0);

int constant_sign(const RatPoly& p) {
  if (p.is_zero()) return 0;
  REQUIRE(p.size() == 1);
  REQUIRE(p.leading_term().first == Exponents{});
  return sgn(p.leading_term().second);
}

RatPoly random_poly(std::mt19937& rng, int terms) {
  std::uniform_int_distribution<int> coef(-9, 9), ex(0, 3), sym(0, 2);
  const Symbol syms[] = {Symbol::A0, Symbol::X, Symbol::F};
  RatPoly p;
  for (int t = 0; t < terms; ++t) {
    RatPoly m = Q(coef(rng), 1 + ex(rng));
    for (int k = 0; k < 2; ++k) m *= V(syms[sym(rng)], static_cast<unsigned>(ex(rng)));
    p += m;
  }
  return p;
}

// Ratio lambda with table = lambda * derived, from the lex-leading terms;
// both polynomials must share the leading monomial.
mpq_class leading_ratio(const RatPoly& table, const RatPoly& derived) {
  REQUIRE(table.leading_term().first == derived.leading_term().first);
  return table.leading_term().second / derived.leading_term().second;
}

}  // namespace

TEST_CASE("poly_add and poly_mul are exact") {
  CHECK(poly_add(X, -X).is_zero());
  CHECK(poly_add(X + 1, X - 1) == 2 * X);
  CHECK(poly_add(g * a0.pow(3), Q(3, 2) * g * a0 * a1sq) - F0 ==
        g * a0.pow(3) + Q(3, 2) * g * a0 * a1sq - F0);
  const RatPoly p = 3 * X * F0 + Q(1, 7);
  CHECK(poly_mul(p, 1) == p);
  CHECK(poly_mul(X + 1, X - 1) == X.pow(2) - 1);

  const RatPoly sq = (5 * g * a0.pow(3) - F0).pow(2);
  CHECK(sq.size() == 3);
  CHECK(sq.coefficient(Symbol::A0, 6) == 25 * g.pow(2));
  CHECK(sq.coefficient(Symbol::A0, 3) == -10 * g * F0);
  CHECK(sq.coefficient(Symbol::A0, 0) == F0.pow(2));
}

TEST_CASE("random round trips are exact") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const RatPoly p = random_poly(rng, 5), q = random_poly(rng, 4);
    CHECK((p + q) - q == p);
    if (!q.is_zero() && !p.is_zero()) CHECK(divide_exact(p * q, q) == p);
  }
}

TEST_CASE("divide_exact rejects non-divisors") {
  CHECK_THROWS_AS(divide_exact(X.pow(2) + 1, X + 1), NotDivisible);
}

TEST_CASE("substitute clears denominators") {
  const RatPoly u = V(Symbol::F), v = V(Symbol::F0);
  auto s1 = substitute(X.pow(2), Symbol::X, u, v, 2);
  CHECK(s1.poly == u.pow(2));
  CHECK(s1.denominator_power == 2);
  CHECK(substitute(X + 1, Symbol::X, u, v, 1).poly == u + v);
  CHECK_THROWS_AS(substitute(X.pow(3), Symbol::X, u, v, 2), DegreeExceeded);
}

TEST_CASE("resultant_exact small cases") {
  const RatPoly u = V(Symbol::F), v = V(Symbol::F0);
  CHECK(resultant_exact(X - u, X - v, Symbol::X) == u - v);
  CHECK(resultant_exact(X.pow(2) - u, X - 1, Symbol::X) == 1 - u);
  CHECK_THROWS_AS(resultant_exact(u, X, Symbol::X), std::domain_error);
}

TEST_CASE("resultant equals product of b over the roots of a") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4), deg(1, 4), coef(-5, 5);
  for (int trial = 0; trial < 30; ++trial) {
    RatPoly a = 1;
    std::vector<mpq_class> roots;
    const int n = deg(rng);
    for (int i = 0; i < n; ++i) {
      roots.emplace_back(num(rng), den(rng));
      roots.back().canonicalize();
      a *= X - RatPoly(roots.back());
    }
    RatPoly b;
    const int m = deg(rng);
    for (int k = 0; k < m; ++k) b += coef(rng) * X.pow(static_cast<unsigned>(k));
    b += X.pow(static_cast<unsigned>(m));
    RatPoly expected = 1;
    for (const auto& r : roots) expected *= substitute(b, Symbol::X, RatPoly(r), 1, m).poly;
    CHECK(resultant_exact(a, b, Symbol::X) == expected);
  }
}

TEST_CASE("numeric Sylvester determinant sign matches the exact resultant") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coef(-9, 9), deg(1, 8);
  int compared = 0;
  while (compared < 50) {
    const int n = deg(rng), m = deg(rng);
    std::vector<double> ca(n + 1), cb(m + 1);
    RatPoly a, b;
    for (int k = 0; k <= n; ++k) {
      ca[k] = coef(rng);
      a += static_cast<long>(ca[k]) * X.pow(static_cast<unsigned>(k));
    }
    for (int k = 0; k <= m; ++k) {
      cb[k] = coef(rng);
      b += static_cast<long>(cb[k]) * X.pow(static_cast<unsigned>(k));
    }
    if (ca[n] == 0 || cb[m] == 0) continue;
    const int exact = constant_sign(resultant_exact(a, b, Symbol::X));
    if (exact == 0) continue;
    CHECK(duffing::sylvester_det_numeric(ca, cb).sign == exact);
    ++compared;
  }
}

TEST_CASE("Sylvester matrix layout") {
  const std::vector<double> a = {-2, 0, 1}, b = {-3, 1};  // x^2 - 2, x - 3
  const auto s = duffing::build_sylvester(a, b);
  REQUIRE(s.size == 3);
  CHECK(s(0, 0) == 1);
  CHECK(s(0, 1) == 0);
  CHECK(s(0, 2) == -2);
  CHECK(s(1, 0) == 1);
  CHECK(s(1, 1) == -3);
  CHECK(s(2, 1) == 1);
  CHECK(s(2, 2) == -3);
  const std::vector<double> p = {-2, 1}, q = {-3, 1};
  CHECK(duffing::sylvester_det_numeric(p, q).value() == doctest::Approx(-1.0));
  const std::vector<double> sq = {1, -2, 1}, dsq = {-2, 2};
  CHECK(duffing::sylvester_det_numeric(sq, dsq).is_zero());
}

TEST_CASE("response polynomial against the printed coefficient rows") {
  const auto t = derive_tables();
  const RatPoly& f = t.response;
  REQUIRE(f.degree(Symbol::A0) == 9);

  // Rows as printed, with Omega^2 = X; the second c6 row is a duplicate and
  // c5 is absent.
  const std::vector<std::pair<unsigned, RatPoly>> printed = {
      {9, 25 * g.pow(3)},
      {8, RatPoly()},
      {7, -20 * X * g.pow(2)},
      {6, -15 * g.pow(2) * F0},
      {4, 16 * X * g * F0},
      {3, -9 * g * F0.pow(2) + 6 * g * F.pow(2)},
      {2, -4 * F0 * X.pow(2) - 16 * z.pow(2) * X * F0},
      {1, 4 * X * F0.pow(2)},
      {0, -F0.pow(3)},
  };
  const mpq_class lambda = leading_ratio(printed[0].second, f.coefficient(Symbol::A0, 9));
  for (const auto& [k, row] : printed) {
    CAPTURE(k);
    CHECK(row == RatPoly(lambda) * f.coefficient(Symbol::A0, k));
  }
  const RatPoly c5 = f.coefficient(Symbol::A0, 5);
  MESSAGE("derived c5 = " << c5.to_string() << ", overall factor " << lambda.get_str());
  CHECK(c5 == 4 * X.pow(2) * g + 16 * X * g * z.pow(2));
  CHECK(c5 != -15 * g.pow(2) * F0);

  // Clearing (3 gamma A0)^3 from the substitution leaves -9/2 gamma^2.
  CHECK(t.response_factor == Q(-9, 2) * g.pow(2));
  CHECK(t.response_cleared == t.response_factor * t.response);
}

TEST_CASE("jump polynomial against the printed table") {
  const auto t = derive_tables();
  const RatPoly& J = t.jump;
  REQUIRE(J.degree(Symbol::A0) == 21);

  const std::vector<std::pair<unsigned, RatPoly>> printed = {
      {21, 4000 * g.pow(7) * z.pow(2)},
      {18, -16000 * g.pow(6) * z.pow(2) * F0},
      {17, 600 * F.pow(2) * g.pow(6)},
      {15, 23880 * g.pow(5) * z.pow(2) * F0.pow(2) - 480 * F.pow(2) * g.pow(5) * z.pow(2)},
      {14, -1920 * F.pow(2) * g.pow(5) * F0},
      {12, 768 * F.pow(2) * g.pow(4) * z.pow(2) * F0 - 15512 * g.pow(4) * z.pow(2) * F0.pow(3)},
      {11, 36 * F.pow(4) * g.pow(4) + 2166 * F.pow(2) * g.pow(4) * F0.pow(2)},
      {9, 3248 * g.pow(3) * z.pow(2) * F0.pow(4) - 72 * F.pow(2) * g.pow(3) * z.pow(2) * F0.pow(2)},
      {8, 36 * F.pow(4) * g.pow(3) * F0 - 978 * F.pow(2) * g.pow(3) * F0.pow(3)},
      {6, 528 * g.pow(2) * z.pow(2) * F0.pow(5) - 240 * F.pow(2) * g.pow(2) * z.pow(2) * F0.pow(3)},
      {5, 9 * F.pow(4) * g.pow(2) * F0.pow(2) + 138 * F.pow(2) * g.pow(2) * F0.pow(4)},
      {3, 24 * F.pow(2) * g * z.pow(2) * F0.pow(4) - 152 * g * z.pow(2) * F0.pow(6)},
      {2, -6 * F.pow(2) * g * F0.pow(5)},
      {0, 8 * z.pow(2) * F0.pow(7)},
  };
  const mpq_class lambda = leading_ratio(printed[0].second, J.coefficient(Symbol::A0, 21));
  std::set<unsigned> nonzero;
  for (const auto& [k, row] : printed) {
    CAPTURE(k);
    CHECK(row == RatPoly(lambda) * J.coefficient(Symbol::A0, k));
    nonzero.insert(k);
  }
  for (unsigned k = 0; k <= 21; ++k) {
    if (!nonzero.count(k)) CHECK(J.coefficient(Symbol::A0, k).is_zero());
  }
  CHECK(lambda == 1);
  CHECK(t.jump_factor == 64 * a0.pow(3));
  CHECK(t.tangency_resultant == t.jump_factor * t.jump);
}

TEST_CASE("derivation report lists every coefficient") {
  const std::string report = tables_report(derive_tables());
  for (unsigned k = 0; k <= 9; ++k) {
    CHECK(report.find("c_" + std::to_string(k) + " = ") != std::string::npos);
  }
  for (unsigned k = 0; k <= 21; ++k) {
    CHECK(report.find("a_" + std::to_string(k) + " = ") != std::string::npos);
  }
}

TEST_CASE("generated coefficients evaluate the derivation") {
  const auto t = derive_tables();
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<double, kSymbolCount> vals{};
    vals[index_of(Symbol::X)] = u(rng);
    vals[index_of(Symbol::gamma)] = u(rng);
    vals[index_of(Symbol::zeta)] = u(rng);
    vals[index_of(Symbol::F)] = u(rng);
    vals[index_of(Symbol::F0)] = u(rng);
    const auto c = duffing::generated::response_coefficients(
        vals[3], vals[4], vals[5], vals[6], vals[2]);
    for (unsigned k = 0; k <= 9; ++k) {
      const double want = t.response.coefficient(Symbol::A0, k).evaluate(vals);
      CHECK(c[k] == doctest::Approx(want).epsilon(1e-13));
    }
    const auto a = duffing::generated::jump_coefficients(vals[3], vals[4], vals[5], vals[6]);
    for (unsigned k = 0; k <= 21; ++k) {
      const double want = t.jump.coefficient(Symbol::A0, k).evaluate(vals);
      CHECK(a[k] == doctest::Approx(want).epsilon(1e-13));
    }
  }
}

TEST_CASE("singular-point elimination reproduces the quartic and the A0^2 relation") {
  const auto t = derive_tables();
  const auto s = derive_singular_conditions(t.response);
  const RatPoly c = g * F.pow(2);
  const RatPoly quartic = 256 * z.pow(4) * X.pow(4) + 1280 * z.pow(6) * X.pow(3) +
                          (-96 * c * z.pow(2) + 2304 * z.pow(8)) * X.pow(2) +
                          (-336 * c * z.pow(4) + 1792 * z.pow(10)) * X +
                          512 * z.pow(12) - 240 * z.pow(6) * c + 45 * c.pow(2);

  // The A0-eliminant is the square of the quartic times a monomial.
  const RatPoly ratio = divide_exact(s.eliminant, quartic.pow(2));
  CHECK(ratio == 5184 * g.pow(4) * z.pow(4));

  // On the branch the response is linear in A0^2: A0^2 = -p0 / p2.
  const RatPoly& p = s.response_on_branch;
  REQUIRE(p.degree(Symbol::A0) == 2);
  CHECK(p.coefficient(Symbol::A0, 1).is_zero());
  const RatPoly p0 = p.coefficient(Symbol::A0, 0), p2 = p.coefficient(Symbol::A0, 2);
  // 45 F^2 gamma^2 A0^2 = rhs holds modulo the quartic.
  const RatPoly rhs = 16 * z.pow(2) * X.pow(3) + 64 * z.pow(4) * X.pow(2) +
                      (9 * g * F.pow(2) + 80 * z.pow(6)) * X + 15 * g * F.pow(2) * z.pow(2) +
                      32 * z.pow(8);
  const RatPoly residual = 45 * F.pow(2) * g.pow(2) * (-p0) - rhs * p2;
  const RatPoly quotient = divide_exact(residual, quartic);
  CHECK(quotient.degree(Symbol::X) == 0);
  CHECK(quotient.degree(Symbol::A0) == 0);
  MESSAGE("45 F^2 gamma^2 (-p0) - rhs p2 = (" << quotient.to_string() << ") * quartic");
}
