#include "fibprod/linear_forms.hpp"

#include <stdexcept>

namespace fibprod {

std::string to_string(EquationKind kind) {
  return kind == EquationKind::fib_equals_lucas_product ? "F=LL" : "L=FF";
}

std::optional<EquationKind> parse_equation_kind(std::string_view text) {
  if (text == "F=LL") return EquationKind::fib_equals_lucas_product;
  if (text == "L=FF") return EquationKind::lucas_equals_fib_product;
  return std::nullopt;
}

LinearForm small_form(EquationKind kind) {
  if (kind == EquationKind::fib_equals_lucas_product) {
    return {QuadraticNumber::sqrt5(), 8, 2, "|sqrt5 alpha^(n+m-k) - 1|"};
  }
  return {QuadraticNumber(5), 8, 2, "|5 alpha^(k-m-n) - 1|"};
}

LinearForm large_form(EquationKind kind, SequenceIndex m) {
  if (m == 0) throw std::invalid_argument("large linear form needs m >= 1");
  const QuadraticNumber root5 = QuadraticNumber::sqrt5();
  if (kind == EquationKind::fib_equals_lucas_product) {
    return {root5 * QuadraticNumber(lucas(m), 0, 1), 33, 1, "|sqrt5 L_m alpha^(n-k) - 1|"};
  }
  return {root5 / QuadraticNumber(fib(m), 0, 1), 4, 1, "|(sqrt5/F_m) alpha^(k-n) - 1|"};
}

long small_form_exponent(EquationKind kind, long k, long m, long n) {
  return kind == EquationKind::fib_equals_lucas_product ? n + m - k : k - m - n;
}

long large_form_exponent(EquationKind kind, long k, long /*m*/, long n) {
  return kind == EquationKind::fib_equals_lucas_product ? n - k : k - n;
}

// alpha^j = alpha^b1 |beta|^b2, since |beta| = 1/alpha.
std::pair<long, long> small_form_product_exponents(EquationKind kind, long k, long m, long n) {
  if (kind == EquationKind::fib_equals_lucas_product) return {-k, -(n + m)};
  return {k, n + m};
}

std::pair<long, long> large_form_product_exponents(EquationKind kind, long k, long /*m*/, long n) {
  if (kind == EquationKind::fib_equals_lucas_product) return {-k, -n};
  return {k, n};
}

std::optional<std::string> nonvanishing_certificate(const QuadraticNumber& eta) {
  const mpq_class norm = eta.norm();
  if (norm == 1 || norm == -1) return std::nullopt;
  return "N(" + eta.to_string() + ") = " + norm.get_str() +
         " is not +-1, so eta is not a power of alpha and the form never vanishes";
}

}  // namespace fibprod
