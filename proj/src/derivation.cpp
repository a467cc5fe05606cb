#include "duffing/derivation.hpp"

#include <cstdio>
#include <sstream>

namespace duffing::algebra {

namespace {

RatPoly var(Symbol s, unsigned power = 1) { return RatPoly::variable(s, power); }

RatPoly rational(long num, long den) { return RatPoly(mpq_class(num, den)); }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

// C++ expression for one coefficient polynomial over the parameter symbols.
std::string cxx_expression(const RatPoly& p) {
  if (p.is_zero()) return "0.0";
  static const char* const names[kSymbolCount] = {"a0", "a1sq", "x", "gamma",
                                                  "zeta", "f_amp", "f0"};
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    os << (first ? "" : " + ") << format_double(c.get_d());
    for (std::size_t i = 0; i < kSymbolCount; ++i) {
      if (e[i] == 0) continue;
      os << " * ";
      if (e[i] == 1) {
        os << names[i];
      } else {
        os << "ipow(" << names[i] << ", " << e[i] << ")";
      }
    }
    first = false;
  }
  return os.str();
}

}  // namespace

DerivedTables derive_tables() {
  DerivedTables t;
  const RatPoly a0 = var(Symbol::A0);
  const RatPoly a1sq = var(Symbol::A1sq);
  const RatPoly x = var(Symbol::X);
  const RatPoly gamma = var(Symbol::gamma);
  const RatPoly zeta = var(Symbol::zeta);
  const RatPoly f = var(Symbol::F);
  const RatPoly f0 = var(Symbol::F0);

  const RatPoly detuning = -x + 3 * gamma * a0.pow(2) + rational(3, 4) * gamma * a1sq;
  t.amplitude_equation =
      a1sq * detuning.pow(2) + 4 * x * zeta.pow(2) * a1sq - f.pow(2);

  // Mean-displacement balance solved for A1^2.
  const RatPoly num = 2 * (f0 - gamma * a0.pow(3));
  const RatPoly den = 3 * gamma * a0;
  t.response_cleared =
      substitute(t.amplitude_equation, Symbol::A1sq, num, den, 3).poly;

  auto response = primitive_part(t.response_cleared, Symbol::A0);
  t.response = std::move(response.primitive);
  t.response_factor = std::move(response.factor);

  t.tangency_resultant =
      resultant_exact(t.response, t.response.derivative(Symbol::A0), Symbol::X);
  auto jump = primitive_part(t.tangency_resultant, Symbol::A0);
  t.jump = std::move(jump.primitive);
  t.jump_factor = std::move(jump.factor);
  return t;
}

SingularElimination derive_singular_conditions(const RatPoly& response) {
  SingularElimination s;
  const RatPoly a0 = var(Symbol::A0);
  s.branch_f0 = 2 * var(Symbol::X) * a0 + 4 * var(Symbol::zeta, 2) * a0 -
                5 * var(Symbol::gamma) * a0.pow(3);
  const unsigned f0_degree = response.degree(Symbol::F0);
  const RatPoly on_branch =
      substitute(response, Symbol::F0, s.branch_f0, 1, f0_degree).poly;
  const RatPoly slope = response.derivative(Symbol::A0);
  const RatPoly slope_on_branch =
      substitute(slope, Symbol::F0, s.branch_f0, 1, slope.degree(Symbol::F0)).poly;
  s.response_on_branch = primitive_part(on_branch, Symbol::A0).primitive;
  s.slope_on_branch = primitive_part(slope_on_branch, Symbol::A0).primitive;
  s.eliminant = resultant_exact(s.response_on_branch, s.slope_on_branch, Symbol::A0);
  return s;
}

std::string tables_report(const DerivedTables& t) {
  std::ostringstream os;
  os << "# response polynomial f(Omega, A0) = sum_k c_k A0^k, X = Omega^2\n";
  os << "# cleared substitution = (" << t.response_factor.to_string()
     << ") * f\n";
  for (unsigned k = 0; k <= t.response.degree(Symbol::A0); ++k) {
    os << "c_" << k << " = " << t.response.coefficient(Symbol::A0, k).to_string()
       << "\n";
  }
  os << "# jump polynomial J(A0) = sum_k a_k A0^k\n";
  os << "# Res_X(f, df/dA0) = (" << t.jump_factor.to_string() << ") * J\n";
  for (unsigned k = 0; k <= t.jump.degree(Symbol::A0); ++k) {
    os << "a_" << k << " = " << t.jump.coefficient(Symbol::A0, k).to_string() << "\n";
  }
  return os.str();
}

std::string coefficient_source(const DerivedTables& t) {
  std::ostringstream os;
  os << "// Generated by derive_tables from the exact elimination. Do not edit.\n"
     << "#include \"duffing/coefficients.hpp\"\n\n"
     << "namespace duffing::generated {\n\n"
     << "namespace {\n\n"
     << "inline double ipow(double v, int n) {\n"
     << "  double r = 1.0;\n"
     << "  for (int i = 0; i < n; ++i) r *= v;\n"
     << "  return r;\n"
     << "}\n\n"
     << "}  // namespace\n\n";

  const unsigned fdeg = t.response.degree(Symbol::A0);
  os << "std::array<double, 10> response_coefficients(double gamma, double zeta,\n"
     << "                                             double f_amp, double f0, "
        "double x) {\n"
     << "  (void)gamma; (void)zeta; (void)f_amp; (void)f0; (void)x;\n"
     << "  std::array<double, 10> c{};\n";
  for (unsigned k = 0; k <= fdeg && k < 10; ++k) {
    os << "  c[" << k << "] = " << cxx_expression(t.response.coefficient(Symbol::A0, k))
       << ";\n";
  }
  os << "  return c;\n}\n\n";

  const unsigned jdeg = t.jump.degree(Symbol::A0);
  os << "std::array<double, 22> jump_coefficients(double gamma, double zeta,\n"
     << "                                         double f_amp, double f0) {\n"
     << "  (void)gamma; (void)zeta; (void)f_amp; (void)f0;\n"
     << "  std::array<double, 22> a{};\n";
  for (unsigned k = 0; k <= jdeg && k < 22; ++k) {
    os << "  a[" << k << "] = " << cxx_expression(t.jump.coefficient(Symbol::A0, k))
       << ";\n";
  }
  os << "  return a;\n}\n\n}  // namespace duffing::generated\n";
  return os.str();
}

}  // namespace duffing::algebra
