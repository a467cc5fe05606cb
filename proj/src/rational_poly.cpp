#include "duffing/rational_poly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace duffing::algebra {

std::string_view symbol_name(Symbol s) {
  switch (s) {
    case Symbol::A0: return "A0";
    case Symbol::A1sq: return "A1sq";
    case Symbol::X: return "X";
    case Symbol::gamma: return "gamma";
    case Symbol::zeta: return "zeta";
    case Symbol::F: return "F";
    case Symbol::F0: return "F0";
  }
  return "?";
}

RatPoly::RatPoly(long c) : RatPoly(mpq_class(c)) {}

// Values built from a numerator/denominator pair may arrive unreduced; map
// equality relies on canonical form, so every entry point reduces.
RatPoly::RatPoly(const mpq_class& c) : RatPoly(term(c, Exponents{})) {}

RatPoly RatPoly::variable(Symbol s, unsigned power) {
  Exponents e{};
  e[index_of(s)] = static_cast<std::uint16_t>(power);
  return term(1, e);
}

RatPoly RatPoly::term(const mpq_class& c, const Exponents& exps) {
  RatPoly p;
  mpq_class r = c;
  r.canonicalize();
  if (r != 0) p.terms_.emplace(exps, std::move(r));
  return p;
}

void RatPoly::add_term(const Exponents& e, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  RatPoly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e;
      for (std::size_t i = 0; i < kSymbolCount; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

RatPoly& RatPoly::operator*=(const RatPoly& o) { return *this = *this * o; }

RatPoly operator-(RatPoly a) {
  for (auto& [e, c] : a.terms_) c = -c;
  return a;
}

RatPoly RatPoly::pow(unsigned n) const {
  RatPoly result(1);
  RatPoly base = *this;
  while (n != 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n != 0) base *= base;
  }
  return result;
}

unsigned RatPoly::degree(Symbol s) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[index_of(s)]);
  return d;
}

RatPoly RatPoly::coefficient(Symbol s, unsigned k) const {
  RatPoly out;
  const auto i = index_of(s);
  for (const auto& [e, c] : terms_) {
    if (e[i] != k) continue;
    Exponents reduced = e;
    reduced[i] = 0;
    out.add_term(reduced, c);
  }
  return out;
}

RatPoly RatPoly::derivative(Symbol s) const {
  RatPoly out;
  const auto i = index_of(s);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents reduced = e;
    --reduced[i];
    out.add_term(reduced, c * e[i]);
  }
  return out;
}

double RatPoly::evaluate(const std::array<double, kSymbolCount>& values) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < kSymbolCount; ++i) {
      if (e[i] != 0) t *= std::pow(values[i], e[i]);
    }
    sum += t;
  }
  return sum;
}

std::string RatPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    mpq_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool any_symbol = std::any_of(e.begin(), e.end(), [](auto x) { return x != 0; });
    bool wrote = false;
    if (mag != 1 || !any_symbol) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < kSymbolCount; ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << symbol_name(static_cast<Symbol>(i));
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

RatPoly poly_add(const RatPoly& a, const RatPoly& b) { return a + b; }
RatPoly poly_mul(const RatPoly& a, const RatPoly& b) { return a * b; }

Substitution substitute(const RatPoly& p, Symbol s, const RatPoly& num,
                        const RatPoly& den, unsigned max_pow) {
  if (den.is_zero()) throw std::domain_error("substitute: zero denominator");
  const unsigned deg = p.degree(s);
  if (deg > max_pow) {
    throw DegreeExceeded("substitute: " + std::string(symbol_name(s)) +
                         " occurs with degree " + std::to_string(deg) +
                         " > " + std::to_string(max_pow));
  }
  std::vector<RatPoly> num_pow(max_pow + 1), den_pow(max_pow + 1);
  num_pow[0] = 1;
  den_pow[0] = 1;
  for (unsigned k = 1; k <= max_pow; ++k) {
    num_pow[k] = num_pow[k - 1] * num;
    den_pow[k] = den_pow[k - 1] * den;
  }
  RatPoly out;
  for (unsigned k = 0; k <= deg; ++k) {
    RatPoly ck = p.coefficient(s, k);
    if (ck.is_zero()) continue;
    out += ck * num_pow[k] * den_pow[max_pow - k];
  }
  return {out, max_pow};
}

namespace {

// Laplace expansion along successive rows, memoized on the set of columns
// still available.  Zero entries are skipped, which keeps the banded
// Sylvester structure cheap.
class MinorExpansion {
 public:
  explicit MinorExpansion(const std::vector<std::vector<RatPoly>>& m) : m_(m) {}

  RatPoly det() {
    const std::size_t n = m_.size();
    if (n == 0) return 1;
    if (n > 30) throw std::domain_error("resultant_exact: matrix too large");
    return minor((std::uint32_t{1} << n) - 1);
  }

 private:
  RatPoly minor(std::uint32_t cols) {
    if (cols == 0) return 1;
    if (auto it = memo_.find(cols); it != memo_.end()) return it->second;
    const std::size_t row = m_.size() - static_cast<std::size_t>(std::popcount(cols));
    RatPoly sum;
    int position = 0;
    for (std::size_t j = 0; j < m_.size(); ++j) {
      if ((cols & (std::uint32_t{1} << j)) == 0) continue;
      const RatPoly& entry = m_[row][j];
      if (!entry.is_zero()) {
        RatPoly t = entry * minor(cols & ~(std::uint32_t{1} << j));
        if (position % 2 == 0) {
          sum += t;
        } else {
          sum -= t;
        }
      }
      ++position;
    }
    return memo_.emplace(cols, std::move(sum)).first->second;
  }

  const std::vector<std::vector<RatPoly>>& m_;
  std::unordered_map<std::uint32_t, RatPoly> memo_;
};

}  // namespace

RatPoly resultant_exact(const RatPoly& a, const RatPoly& b, Symbol s) {
  const unsigned n = a.degree(s);
  const unsigned m = b.degree(s);
  if (n == 0 || m == 0) {
    throw std::domain_error("resultant_exact: operand has degree 0 in " +
                            std::string(symbol_name(s)));
  }
  const std::size_t size = n + m;
  std::vector<std::vector<RatPoly>> sylvester(size, std::vector<RatPoly>(size));
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned k = 0; k <= n; ++k) sylvester[i][i + k] = a.coefficient(s, n - k);
  }
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned k = 0; k <= m; ++k) sylvester[m + i][i + k] = b.coefficient(s, m - k);
  }
  return MinorExpansion(sylvester).det();
}

RatPoly divide_exact(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::domain_error("divide_exact: division by zero");
  const auto& [lb_exp, lb_coef] = b.leading_term();
  RatPoly quotient;
  RatPoly rest = a;
  while (!rest.is_zero()) {
    const auto& [lr_exp, lr_coef] = rest.leading_term();
    Exponents e;
    for (std::size_t i = 0; i < kSymbolCount; ++i) {
      if (lr_exp[i] < lb_exp[i]) throw NotDivisible("divide_exact: nonzero remainder");
      e[i] = lr_exp[i] - lb_exp[i];
    }
    RatPoly t = RatPoly::term(lr_coef / lb_coef, e);
    quotient += t;
    rest -= t * b;
  }
  return quotient;
}

PrimitiveSplit primitive_part(const RatPoly& p, Symbol lead) {
  if (p.is_zero()) throw std::domain_error("primitive_part: zero polynomial");
  Exponents common = p.terms().begin()->first;
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < kSymbolCount; ++i) common[i] = std::min(common[i], e[i]);
    num_gcd = gcd(num_gcd, mpz_class(c.get_num()));
    den_lcm = lcm(den_lcm, mpz_class(c.get_den()));
  }
  mpq_class content(num_gcd, den_lcm);
  content.canonicalize();
  const RatPoly top = p.coefficient(lead, p.degree(lead));
  if (top.leading_term().second < 0) content = -content;

  PrimitiveSplit out;
  out.factor = RatPoly::term(content, common);
  for (const auto& [e, c] : p.terms()) {
    Exponents reduced;
    for (std::size_t i = 0; i < kSymbolCount; ++i) reduced[i] = e[i] - common[i];
    out.primitive += RatPoly::term(c / content, reduced);
  }
  return out;
}

}  // namespace duffing::algebra
