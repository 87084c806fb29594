#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fibprod/algebraic.hpp"
#include "fibprod/sequences.hpp"

namespace fibprod {

enum class EquationKind {
  fib_equals_lucas_product,  // F_k = L_m L_n
  lucas_equals_fib_product,  // L_k = F_m F_n
};

// "F=LL" / "L=FF".
std::string to_string(EquationKind kind);
std::optional<EquationKind> parse_equation_kind(std::string_view text);

// Binet's formulas turn a solution (k, m, n) of either equation into a
// small value of
//     |eta * alpha^j - 1| < numerator / alpha^(decay * t)
// where j is an integer combination of the indices and t is m (the "small"
// form, decay 2) or n (the "large" form, decay 1):
//
//   F=LL small:  eta = sqrt5,          j = n + m - k,  bound 8 / alpha^2m
//   F=LL large:  eta = sqrt5 L_m,      j = n - k,      bound 33 / alpha^n
//   L=FF small:  eta = 5,              j = k - m - n,  bound 8 / alpha^2m
//   L=FF large:  eta = sqrt5 / F_m,    j = k - n,      bound 4 / alpha^n
//
// Multiplying out with |beta| = 1/alpha gives the three-term products
// alpha^b1 |beta|^b2 eta used for the Matveev instances.
struct LinearForm {
  QuadraticNumber eta;
  long numerator = 0;
  int decay = 1;
  std::string name;
};

LinearForm small_form(EquationKind kind);
LinearForm large_form(EquationKind kind, SequenceIndex m);

long small_form_exponent(EquationKind kind, long k, long m, long n);
long large_form_exponent(EquationKind kind, long k, long m, long n);

// Exponents (b1, b2) on (alpha, |beta|) of the three-term product for the
// small / large form at (k, m, n); the exponent on eta is 1.
std::pair<long, long> small_form_product_exponents(EquationKind kind, long k, long m, long n);
std::pair<long, long> large_form_product_exponents(EquationKind kind, long k, long m, long n);

// eta * alpha^j = 1 has no integer solution j when eta is not a unit
// (|N(eta)| != 1), so the form never vanishes. Returns that certificate as
// a sentence, or nullopt when eta is a unit.
std::optional<std::string> nonvanishing_certificate(const QuadraticNumber& eta);

}  // namespace fibprod
