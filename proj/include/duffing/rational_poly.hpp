#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace duffing::algebra {

// The closed symbol universe of the derivation.  X always stands for the
// squared drive frequency and A1sq for the squared harmonic amplitude.
enum class Symbol : std::uint8_t { A0, A1sq, X, gamma, zeta, F, F0 };

inline constexpr std::size_t kSymbolCount = 7;

std::string_view symbol_name(Symbol s);

inline constexpr std::size_t index_of(Symbol s) {
  return static_cast<std::size_t>(s);
}

using Exponents = std::array<std::uint16_t, kSymbolCount>;

class DegreeExceeded : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotDivisible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Sparse multivariate polynomial with exact rational coefficients.  Terms are
// kept in a map ordered lexicographically on the exponent vector (A0 first),
// with no zero coefficients stored, so structural equality is mathematical
// equality.
class RatPoly {
 public:
  using TermMap = std::map<Exponents, mpq_class>;

  RatPoly() = default;
  RatPoly(long c);  // NOLINT(google-explicit-constructor)
  RatPoly(const mpq_class& c);  // NOLINT(google-explicit-constructor)

  static RatPoly variable(Symbol s, unsigned power = 1);
  static RatPoly term(const mpq_class& c, const Exponents& exps);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  unsigned degree(Symbol s) const;
  // Collected coefficient of s^k, as a polynomial in the remaining symbols.
  RatPoly coefficient(Symbol s, unsigned k) const;
  RatPoly derivative(Symbol s) const;
  RatPoly pow(unsigned n) const;

  // Lex-leading term; undefined on the zero polynomial.
  const std::pair<const Exponents, mpq_class>& leading_term() const {
    return *terms_.rbegin();
  }

  // Evaluate with all symbols bound; values indexed by Symbol.
  double evaluate(const std::array<double, kSymbolCount>& values) const;

  std::string to_string() const;

  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  RatPoly& operator*=(const RatPoly& o);

  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(RatPoly a);
  friend bool operator==(const RatPoly& a, const RatPoly& b) {
    return a.terms_ == b.terms_;
  }

 private:
  void add_term(const Exponents& e, const mpq_class& c);

  TermMap terms_;
};

RatPoly poly_add(const RatPoly& a, const RatPoly& b);
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);

struct Substitution {
  RatPoly poly;
  unsigned denominator_power = 0;
};

// p with s := num/den, multiplied through by den^max_pow so the result is a
// polynomial.  Throws DegreeExceeded if s occurs in p above max_pow.
Substitution substitute(const RatPoly& p, Symbol s, const RatPoly& num,
                        const RatPoly& den, unsigned max_pow);

// Resultant of a and b with respect to s: the determinant of their Sylvester
// matrix, with polynomial entries, expanded exactly.  Throws std::domain_error
// if either argument has degree 0 in s.
RatPoly resultant_exact(const RatPoly& a, const RatPoly& b, Symbol s);

// Exact quotient a / b.  Throws NotDivisible when b does not divide a.
RatPoly divide_exact(const RatPoly& a, const RatPoly& b);

// p = factor * primitive, where factor is a rational times a monomial (the
// gcd of all exponent vectors and the rational content) and primitive has
// coprime integer coefficients and a positive leading coefficient in `lead`.
struct PrimitiveSplit {
  RatPoly primitive;
  RatPoly factor;
};
PrimitiveSplit primitive_part(const RatPoly& p, Symbol lead);

}  // namespace duffing::algebra
