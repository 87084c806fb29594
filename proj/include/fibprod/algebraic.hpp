#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "fibprod/certified_real.hpp"

namespace fibprod {

// Exact element (a + b sqrt5) / c of Q(sqrt 5), always in canonical form:
// c > 0 and gcd(a, b, c) = 1, so equal elements have equal fields.
class QuadraticNumber {
 public:
  QuadraticNumber() : a_(0), b_(0), c_(1) {}
  QuadraticNumber(long integer) : a_(integer), b_(0), c_(1) {}  // NOLINT(google-explicit-constructor)
  QuadraticNumber(mpz_class a, mpz_class b, mpz_class c);

  static QuadraticNumber rational(const mpq_class& value);
  static QuadraticNumber golden_ratio();         // alpha = (1 + sqrt5) / 2
  static QuadraticNumber golden_conjugate();     // beta  = (1 - sqrt5) / 2
  static QuadraticNumber golden_conjugate_abs(); // |beta| = 1 / alpha
  static QuadraticNumber sqrt5();

  const mpz_class& a() const noexcept { return a_; }
  const mpz_class& b() const noexcept { return b_; }
  const mpz_class& c() const noexcept { return c_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  bool is_one() const { return a_ == 1 && b_ == 0 && c_ == 1; }

  // sqrt5 -> -sqrt5.
  QuadraticNumber conjugate() const { return {a_, -b_, c_}; }
  mpq_class norm() const;
  mpq_class trace() const;
  // Sign under the real embedding sqrt5 -> +2.236...
  int sign() const;
  bool is_algebraic_integer() const;
  bool is_unit() const;

  CertifiedReal to_real(Precision precision) const;
  std::string to_string() const;

  QuadraticNumber operator-() const { return {-a_, -b_, c_}; }
  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
  // std::domain_error on division by zero.
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y);
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
  }

 private:
  mpz_class a_;
  mpz_class b_;
  mpz_class c_;
};

QuadraticNumber pow(const QuadraticNumber& x, long exponent);

// Primitive integer polynomial, leading coefficient first and positive.
struct IntegerPolynomial {
  std::vector<mpz_class> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  std::string to_string() const;
  friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;
};

IntegerPolynomial minimal_polynomial(const QuadraticNumber& x);

// Absolute logarithmic (Weil) height
//   h(x) = (log a_0 + sum_i log max(|x_i|, 1)) / d
// over the conjugates x_i of x and the leading coefficient a_0 of its
// minimal polynomial. std::domain_error for x = 0.
CertifiedReal log_height(const QuadraticNumber& x, Precision precision);
CertifiedReal log_height(const QuadraticNumber& x, const PrecisionPolicy& policy = {});

// True iff x^u y^v = 1 for some integers (u, v) != (0, 0). Both inputs must
// be positive and different from 1 (std::invalid_argument otherwise).
bool multiplicatively_dependent(const QuadraticNumber& x, const QuadraticNumber& y,
                                const PrecisionPolicy& policy = {});

// prod bases[i]^exponents[i], the argument of a linear form in logarithms.
class ProductForm {
 public:
  // std::invalid_argument unless 1 <= bases.size() == exponents.size() and
  // every base is positive under the real embedding.
  ProductForm(std::vector<QuadraticNumber> bases, std::vector<long> exponents);

  const std::vector<QuadraticNumber>& bases() const noexcept { return bases_; }
  const std::vector<long>& exponents() const noexcept { return exponents_; }
  std::size_t size() const noexcept { return bases_.size(); }

  QuadraticNumber evaluate() const;

 private:
  std::vector<QuadraticNumber> bases_;
  std::vector<long> exponents_;
};

// Exact test of prod bases^exponents == 1, i.e. whether the linear form
// built from `form` vanishes.
bool product_equals_one(const ProductForm& form);

}  // namespace fibprod
