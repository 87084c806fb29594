#include "fibprod/algebraic.hpp"

#include <sstream>
#include <stdexcept>

namespace fibprod {

namespace {

mpz_class gcd3(const mpz_class& a, const mpz_class& b, const mpz_class& c) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

}  // namespace

QuadraticNumber::QuadraticNumber(mpz_class a, mpz_class b, mpz_class c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (c_ == 0) throw std::invalid_argument("quadratic number with zero denominator");
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  if (is_zero()) {
    c_ = 1;
    return;
  }
  const mpz_class g = gcd3(a_, b_, c_);
  if (g != 1) {
    mpz_divexact(a_.get_mpz_t(), a_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b_.get_mpz_t(), b_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(c_.get_mpz_t(), c_.get_mpz_t(), g.get_mpz_t());
  }
}

QuadraticNumber QuadraticNumber::rational(const mpq_class& value) {
  return {value.get_num(), 0, value.get_den()};
}

QuadraticNumber QuadraticNumber::golden_ratio() { return {1, 1, 2}; }
QuadraticNumber QuadraticNumber::golden_conjugate() { return {1, -1, 2}; }
QuadraticNumber QuadraticNumber::golden_conjugate_abs() { return {-1, 1, 2}; }
QuadraticNumber QuadraticNumber::sqrt5() { return {0, 1, 1}; }

mpq_class QuadraticNumber::norm() const {
  mpq_class out(a_ * a_ - 5 * b_ * b_, c_ * c_);
  out.canonicalize();
  return out;
}

mpq_class QuadraticNumber::trace() const {
  mpq_class out(2 * a_, c_);
  out.canonicalize();
  return out;
}

int QuadraticNumber::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: the larger of a^2 and 5 b^2 wins.
  const int cmp_ab = cmp(a_ * a_, 5 * b_ * b_);
  return cmp_ab > 0 ? sa : sb;
}

bool QuadraticNumber::is_algebraic_integer() const {
  return minimal_polynomial(*this).coefficients.front() == 1;
}

bool QuadraticNumber::is_unit() const {
  if (is_zero() || !is_algebraic_integer()) return false;
  const mpq_class n = norm();
  return n == 1 || n == -1;
}

CertifiedReal QuadraticNumber::to_real(Precision precision) const {
  const CertifiedReal a = CertifiedReal::from_integer(a_, precision);
  if (b_ == 0) return CertifiedReal::from_rational(mpq_class(a_, c_), precision);
  const CertifiedReal b = CertifiedReal::from_integer(b_, precision);
  const CertifiedReal c = CertifiedReal::from_integer(c_, precision);
  return (a + b * fibprod::sqrt5(precision)) / c;
}

std::string QuadraticNumber::to_string() const {
  std::ostringstream out;
  if (b_ == 0) {
    out << a_;
    if (c_ != 1) out << '/' << c_;
    return out.str();
  }
  std::ostringstream numerator;
  if (a_ != 0) {
    numerator << a_ << (b_ > 0 ? " + " : " - ");
    if (abs(b_) != 1) numerator << abs(b_) << '*';
    numerator << "sqrt5";
  } else {
    if (b_ == -1) numerator << '-';
    else if (b_ != 1) numerator << b_ << '*';
    numerator << "sqrt5";
  }
  if (c_ == 1) return numerator.str();
  out << '(' << numerator.str() << ")/" << c_;
  return out.str();
}

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  return {x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_, x.c_ * y.c_};
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) { return x + (-y); }

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
  return {x.a_ * y.a_ + 5 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.c_ * y.c_};
}

QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (y.is_zero()) throw std::domain_error("division by zero in Q(sqrt5)");
  // 1/y = c (a - b sqrt5) / (a^2 - 5 b^2)
  const QuadraticNumber inverse(y.c_ * y.a_, -y.c_ * y.b_, y.a_ * y.a_ - 5 * y.b_ * y.b_);
  return x * inverse;
}

QuadraticNumber pow(const QuadraticNumber& x, long exponent) {
  if (exponent < 0) return QuadraticNumber(1) / pow(x, -exponent);
  QuadraticNumber result(1);
  QuadraticNumber base = x;
  auto e = static_cast<unsigned long>(exponent);
  while (e != 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

std::string IntegerPolynomial::to_string() const {
  std::ostringstream out;
  const int d = degree();
  bool first = true;
  for (int i = 0; i <= d; ++i) {
    const mpz_class& coefficient = coefficients[static_cast<std::size_t>(i)];
    if (coefficient == 0) continue;
    const int power = d - i;
    const mpz_class magnitude = abs(coefficient);
    if (first) {
      if (coefficient < 0) out << '-';
    } else {
      out << (coefficient < 0 ? " - " : " + ");
    }
    if (magnitude != 1 || power == 0) out << magnitude;
    if (power >= 1) out << 'x';
    if (power >= 2) out << '^' << power;
    first = false;
  }
  return first ? "0" : out.str();
}

IntegerPolynomial minimal_polynomial(const QuadraticNumber& x) {
  if (x.is_zero()) throw std::domain_error("minimal polynomial of zero");
  if (x.is_rational()) return {{x.c(), -x.a()}};
  // c^2 X^2 - 2ac X + (a^2 - 5 b^2), made primitive.
  mpz_class lead = x.c() * x.c();
  mpz_class mid = -2 * x.a() * x.c();
  mpz_class constant = x.a() * x.a() - 5 * x.b() * x.b();
  const mpz_class g = gcd3(lead, mid, constant);
  return {{lead / g, mid / g, constant / g}};
}

CertifiedReal log_height(const QuadraticNumber& x, Precision precision) {
  const IntegerPolynomial poly = minimal_polynomial(x);
  const CertifiedReal one = CertifiedReal::from_long(1, precision);
  CertifiedReal sum = log(CertifiedReal::from_integer(poly.coefficients.front(), precision));
  sum = sum + log(max(abs(x.to_real(precision)), one));
  if (!x.is_rational()) sum = sum + log(max(abs(x.conjugate().to_real(precision)), one));
  return sum / poly.degree();
}

CertifiedReal log_height(const QuadraticNumber& x, const PrecisionPolicy& policy) {
  if (x.is_zero()) throw std::domain_error("logarithmic height of zero");
  return with_escalation(policy, "log_height", [&](Precision p) { return log_height(x, p); });
}

bool multiplicatively_dependent(const QuadraticNumber& x, const QuadraticNumber& y,
                                const PrecisionPolicy& policy) {
  if (x.sign() <= 0 || y.sign() <= 0) {
    throw std::invalid_argument("multiplicative dependence needs positive numbers");
  }
  if (x.is_one() || y.is_one()) {
    throw std::invalid_argument("multiplicative dependence undefined for 1");
  }
  if (x == y) return true;
  // A relation x^u = y^-v with gcd(u, v) = 1 forces x = z^v, y = z^-u for
  // some z in the field. Every z of degree <= 2 that is not a root of unity
  // has h(z) >= (1/2) log alpha, so |v| <= h(x) / ((1/2) log alpha). For
  // each such v the only candidate u is -v log y / log x; candidates whose
  // certified interval holds no integer are discarded, the rest are tested
  // exactly.
  return with_escalation(policy, "multiplicatively_dependent", [&](Precision p) {
    const CertifiedReal min_height = log_golden_ratio(p) / 2;
    const CertifiedReal hx = log_height(x, p);
    // One extra step absorbs the double rounding of the quotient.
    const auto v_max = static_cast<long>(hx.upper_double() / min_height.lower_double()) + 1;
    const CertifiedReal log_x = log(x.to_real(p));
    const CertifiedReal log_y = log(y.to_real(p));
    if (log_x.contains_zero()) throw Undecided("log x not separated from zero");
    const CertifiedReal ratio = -log_y / log_x;
    for (long v = 1; v <= v_max; ++v) {
      const CertifiedReal u_interval = ratio * v;
      mpz_class u_low;
      mpz_class u_high;
      mpfr_get_z(u_low.get_mpz_t(), u_interval.lower().get(), MPFR_RNDU);
      mpfr_get_z(u_high.get_mpz_t(), u_interval.upper().get(), MPFR_RNDD);
      for (mpz_class u = u_low; u <= u_high; ++u) {
        if (u == 0 || !u.fits_slong_p()) continue;
        const QuadraticNumber product = pow(x, u.get_si()) * pow(y, v);
        if (product.is_one() || product == QuadraticNumber(-1)) return true;
      }
    }
    return false;
  });
}

ProductForm::ProductForm(std::vector<QuadraticNumber> bases, std::vector<long> exponents)
    : bases_(std::move(bases)), exponents_(std::move(exponents)) {
  if (bases_.empty()) throw std::invalid_argument("product form needs at least one base");
  if (bases_.size() != exponents_.size()) {
    throw std::invalid_argument("product form bases and exponents differ in length");
  }
  for (const auto& base : bases_) {
    if (base.sign() <= 0) {
      throw std::invalid_argument("product form base " + base.to_string() + " is not positive");
    }
  }
}

QuadraticNumber ProductForm::evaluate() const {
  QuadraticNumber product(1);
  for (std::size_t i = 0; i < bases_.size(); ++i) product = product * pow(bases_[i], exponents_[i]);
  return product;
}

bool product_equals_one(const ProductForm& form) { return form.evaluate().is_one(); }

}  // namespace fibprod
