#include "fibprod/certified_real.hpp"

#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <utility>

namespace fibprod {

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(Precision precision) { mpfr_init2(value_, precision); mpfr_set_zero(value_, 1); }

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_string(int digits, mpfr_rnd_t rnd) const {
  char* raw = nullptr;
  const char* format = rnd == MPFR_RNDD ? "%.*RDe" : rnd == MPFR_RNDU ? "%.*RUe" : "%.*RNe";
  if (mpfr_asprintf(&raw, format, std::max(digits - 1, 0), value_) < 0) {
    throw std::runtime_error("mpfr_asprintf failed");
  }
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

// ----------------------------------------------------------- CertifiedReal

namespace {

Precision joint(const CertifiedReal& a, const CertifiedReal& b) {
  return std::max(a.precision(), b.precision());
}

template <class SetLow, class SetHigh>
CertifiedReal make(Precision precision, SetLow&& set_low, SetHigh&& set_high) {
  BigFloat lo(precision);
  BigFloat hi(precision);
  set_low(lo.get());
  set_high(hi.get());
  return CertifiedReal::from_bounds(std::move(lo), std::move(hi));
}

}  // namespace

CertifiedReal::CertifiedReal(Precision precision) : lower_(precision), upper_(precision) {}

CertifiedReal::CertifiedReal(BigFloat lower, BigFloat upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {}

CertifiedReal CertifiedReal::from_bounds(BigFloat lower, BigFloat upper) {
  if (mpfr_nan_p(lower.get()) || mpfr_nan_p(upper.get())) {
    throw std::domain_error("certified real with NaN endpoint");
  }
  if (mpfr_greater_p(lower.get(), upper.get())) {
    throw std::logic_error("certified real with lower > upper");
  }
  if (lower.precision() != upper.precision()) {
    const Precision p = std::max(lower.precision(), upper.precision());
    BigFloat lo(p);
    BigFloat hi(p);
    mpfr_set(lo.get(), lower.get(), MPFR_RNDD);
    mpfr_set(hi.get(), upper.get(), MPFR_RNDU);
    return CertifiedReal(std::move(lo), std::move(hi));
  }
  return CertifiedReal(std::move(lower), std::move(upper));
}

CertifiedReal CertifiedReal::from_long(long value, Precision precision) {
  return make(
      precision, [&](mpfr_ptr lo) { mpfr_set_si(lo, value, MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_set_si(hi, value, MPFR_RNDU); });
}

CertifiedReal CertifiedReal::from_integer(const mpz_class& value, Precision precision) {
  return make(
      precision, [&](mpfr_ptr lo) { mpfr_set_z(lo, value.get_mpz_t(), MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_set_z(hi, value.get_mpz_t(), MPFR_RNDU); });
}

CertifiedReal CertifiedReal::from_rational(const mpq_class& value, Precision precision) {
  return make(
      precision, [&](mpfr_ptr lo) { mpfr_set_q(lo, value.get_mpq_t(), MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_set_q(hi, value.get_mpq_t(), MPFR_RNDU); });
}

CertifiedReal CertifiedReal::from_decimal(std::string_view text, Precision precision) {
  const std::string literal(text);
  auto parse = [&](mpfr_ptr target, mpfr_rnd_t rnd) {
    char* end = nullptr;
    mpfr_strtofr(target, literal.c_str(), &end, 10, rnd);
    if (end == literal.c_str() || *end != '\0') {
      throw std::invalid_argument("not a decimal literal: " + literal);
    }
  };
  return make(
      precision, [&](mpfr_ptr lo) { parse(lo, MPFR_RNDD); },
      [&](mpfr_ptr hi) { parse(hi, MPFR_RNDU); });
}

BigFloat CertifiedReal::midpoint() const {
  BigFloat mid(precision() + 1);
  mpfr_add(mid.get(), lower_.get(), upper_.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  return mid;
}

BigFloat CertifiedReal::radius() const {
  const BigFloat mid = midpoint();
  BigFloat above(64);
  BigFloat below(64);
  mpfr_sub(above.get(), upper_.get(), mid.get(), MPFR_RNDU);
  mpfr_sub(below.get(), mid.get(), lower_.get(), MPFR_RNDU);
  if (mpfr_less_p(above.get(), below.get())) return below;
  return above;
}

bool CertifiedReal::contains(const CertifiedReal& inner) const {
  return mpfr_lessequal_p(lower_.get(), inner.lower_.get()) &&
         mpfr_lessequal_p(inner.upper_.get(), upper_.get());
}

CertifiedReal CertifiedReal::with_precision(Precision precision) const {
  return make(
      precision, [&](mpfr_ptr lo) { mpfr_set(lo, lower_.get(), MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_set(hi, upper_.get(), MPFR_RNDU); });
}

// -------------------------------------------------------------- arithmetic

CertifiedReal operator-(const CertifiedReal& x) {
  return make(
      x.precision(), [&](mpfr_ptr lo) { mpfr_neg(lo, x.upper().get(), MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_neg(hi, x.lower().get(), MPFR_RNDU); });
}

CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
  return make(
      joint(a, b),
      [&](mpfr_ptr lo) { mpfr_add(lo, a.lower().get(), b.lower().get(), MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_add(hi, a.upper().get(), b.upper().get(), MPFR_RNDU); });
}

CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b) {
  return make(
      joint(a, b),
      [&](mpfr_ptr lo) { mpfr_sub(lo, a.lower().get(), b.upper().get(), MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_sub(hi, a.upper().get(), b.lower().get(), MPFR_RNDU); });
}

CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b) {
  const Precision p = joint(a, b);
  mpfr_srcptr ends_a[2] = {a.lower().get(), a.upper().get()};
  mpfr_srcptr ends_b[2] = {b.lower().get(), b.upper().get()};
  BigFloat lo(p);
  BigFloat hi(p);
  BigFloat scratch(p);
  bool first = true;
  for (mpfr_srcptr x : ends_a) {
    for (mpfr_srcptr y : ends_b) {
      mpfr_mul(scratch.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(scratch.get(), lo.get())) mpfr_set(lo.get(), scratch.get(), MPFR_RNDD);
      mpfr_mul(scratch.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(scratch.get(), hi.get())) mpfr_set(hi.get(), scratch.get(), MPFR_RNDU);
      first = false;
    }
  }
  return CertifiedReal::from_bounds(std::move(lo), std::move(hi));
}

namespace {

CertifiedReal reciprocal(const CertifiedReal& x) {
  if (mpfr_zero_p(x.lower().get()) && mpfr_zero_p(x.upper().get())) {
    throw std::domain_error("division by zero");
  }
  if (x.contains_zero()) throw Undecided("divisor interval contains zero");
  return make(
      x.precision(), [&](mpfr_ptr lo) { mpfr_ui_div(lo, 1, x.upper().get(), MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_ui_div(hi, 1, x.lower().get(), MPFR_RNDU); });
}

}  // namespace

CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b) {
  // Exact endpoint division when possible keeps intervals tight for the
  // common positive/positive case.
  if (mpfr_sgn(b.lower().get()) > 0 && mpfr_sgn(a.lower().get()) >= 0) {
    return make(
        joint(a, b),
        [&](mpfr_ptr lo) { mpfr_div(lo, a.lower().get(), b.upper().get(), MPFR_RNDD); },
        [&](mpfr_ptr hi) { mpfr_div(hi, a.upper().get(), b.lower().get(), MPFR_RNDU); });
  }
  return a * reciprocal(b);
}

CertifiedReal operator+(const CertifiedReal& a, long b) {
  return a + CertifiedReal::from_long(b, a.precision());
}
CertifiedReal operator-(const CertifiedReal& a, long b) {
  return a - CertifiedReal::from_long(b, a.precision());
}
CertifiedReal operator*(const CertifiedReal& a, long b) {
  return a * CertifiedReal::from_long(b, a.precision());
}
CertifiedReal operator*(long a, const CertifiedReal& b) { return b * a; }
CertifiedReal operator/(const CertifiedReal& a, long b) {
  return a / CertifiedReal::from_long(b, a.precision());
}
CertifiedReal operator/(long a, const CertifiedReal& b) {
  return CertifiedReal::from_long(a, b.precision()) / b;
}

CertifiedReal abs(const CertifiedReal& x) {
  if (mpfr_sgn(x.lower().get()) >= 0) return x;
  if (mpfr_sgn(x.upper().get()) <= 0) return -x;
  return make(
      x.precision(), [&](mpfr_ptr lo) { mpfr_set_zero(lo, 1); },
      [&](mpfr_ptr hi) {
        mpfr_neg(hi, x.lower().get(), MPFR_RNDU);
        mpfr_max(hi, hi, x.upper().get(), MPFR_RNDU);
      });
}

CertifiedReal sqrt(const CertifiedReal& x) {
  if (mpfr_sgn(x.upper().get()) < 0) throw std::domain_error("sqrt of negative number");
  if (mpfr_sgn(x.lower().get()) < 0) throw Undecided("sqrt argument straddles zero");
  return make(
      x.precision(), [&](mpfr_ptr lo) { mpfr_sqrt(lo, x.lower().get(), MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_sqrt(hi, x.upper().get(), MPFR_RNDU); });
}

CertifiedReal exp(const CertifiedReal& x) {
  return make(
      x.precision(), [&](mpfr_ptr lo) { mpfr_exp(lo, x.lower().get(), MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_exp(hi, x.upper().get(), MPFR_RNDU); });
}

CertifiedReal expm1(const CertifiedReal& x) {
  return make(
      x.precision(), [&](mpfr_ptr lo) { mpfr_expm1(lo, x.lower().get(), MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_expm1(hi, x.upper().get(), MPFR_RNDU); });
}

CertifiedReal log(const CertifiedReal& x) {
  if (mpfr_sgn(x.upper().get()) <= 0) throw std::domain_error("log of non-positive number");
  if (mpfr_sgn(x.lower().get()) <= 0) throw Undecided("log argument interval reaches zero");
  return make(
      x.precision(), [&](mpfr_ptr lo) { mpfr_log(lo, x.lower().get(), MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_log(hi, x.upper().get(), MPFR_RNDU); });
}

CertifiedReal pow(const CertifiedReal& x, long exponent) {
  if (exponent == 0) return CertifiedReal::from_long(1, x.precision());
  if (exponent < 0) return reciprocal(pow(x, -exponent));
  const auto e = static_cast<unsigned long>(exponent);
  if (e % 2 == 0) {
    const CertifiedReal base = abs(x);
    return make(
        x.precision(), [&](mpfr_ptr lo) { mpfr_pow_ui(lo, base.lower().get(), e, MPFR_RNDD); },
        [&](mpfr_ptr hi) { mpfr_pow_ui(hi, base.upper().get(), e, MPFR_RNDU); });
  }
  return make(
      x.precision(), [&](mpfr_ptr lo) { mpfr_pow_ui(lo, x.lower().get(), e, MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_pow_ui(hi, x.upper().get(), e, MPFR_RNDU); });
}

CertifiedReal max(const CertifiedReal& a, const CertifiedReal& b) {
  return make(
      joint(a, b), [&](mpfr_ptr lo) { mpfr_max(lo, a.lower().get(), b.lower().get(), MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_max(hi, a.upper().get(), b.upper().get(), MPFR_RNDU); });
}

CertifiedReal min(const CertifiedReal& a, const CertifiedReal& b) {
  return make(
      joint(a, b), [&](mpfr_ptr lo) { mpfr_min(lo, a.lower().get(), b.lower().get(), MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_min(hi, a.upper().get(), b.upper().get(), MPFR_RNDU); });
}

CertifiedReal hull(const CertifiedReal& a, const CertifiedReal& b) {
  return make(
      joint(a, b), [&](mpfr_ptr lo) { mpfr_min(lo, a.lower().get(), b.lower().get(), MPFR_RNDD); },
      [&](mpfr_ptr hi) { mpfr_max(hi, a.upper().get(), b.upper().get(), MPFR_RNDU); });
}

// ------------------------------------------------------------- decisions

std::optional<bool> try_less(const CertifiedReal& a, const CertifiedReal& b) {
  if (mpfr_less_p(a.upper().get(), b.lower().get())) return true;
  if (mpfr_greaterequal_p(a.lower().get(), b.upper().get())) return false;
  return std::nullopt;
}

std::optional<bool> try_less_equal(const CertifiedReal& a, const CertifiedReal& b) {
  if (mpfr_lessequal_p(a.upper().get(), b.lower().get())) return true;
  if (mpfr_greater_p(a.lower().get(), b.upper().get())) return false;
  return std::nullopt;
}

bool less(const CertifiedReal& a, const CertifiedReal& b) {
  if (auto decided = try_less(a, b)) return *decided;
  throw Undecided("comparison a < b not decided");
}

bool less_equal(const CertifiedReal& a, const CertifiedReal& b) {
  if (auto decided = try_less_equal(a, b)) return *decided;
  throw Undecided("comparison a <= b not decided");
}

int sign(const CertifiedReal& x) {
  if (mpfr_sgn(x.lower().get()) > 0) return 1;
  if (mpfr_sgn(x.upper().get()) < 0) return -1;
  if (mpfr_zero_p(x.lower().get()) && mpfr_zero_p(x.upper().get())) return 0;
  throw Undecided("sign not decided");
}

namespace {

mpz_class integer_part(mpfr_srcptr x, mpfr_rnd_t rnd) {
  if (!mpfr_number_p(x)) throw std::domain_error("non-finite value has no integer part");
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), x, rnd);
  return out;
}

}  // namespace

mpz_class floor(const CertifiedReal& x) {
  mpz_class lo = integer_part(x.lower().get(), MPFR_RNDD);
  if (lo != integer_part(x.upper().get(), MPFR_RNDD)) throw Undecided("floor not decided");
  return lo;
}

mpz_class ceil(const CertifiedReal& x) {
  mpz_class lo = integer_part(x.lower().get(), MPFR_RNDU);
  if (lo != integer_part(x.upper().get(), MPFR_RNDU)) throw Undecided("ceil not decided");
  return lo;
}

mpz_class round_nearest(const CertifiedReal& x) {
  const CertifiedReal half = CertifiedReal::from_rational(mpq_class(1, 2), x.precision());
  return floor(x + half);
}

// -------------------------------------------------------------- constants

CertifiedReal sqrt5(Precision precision) {
  return make(
      precision, [](mpfr_ptr lo) { mpfr_sqrt_ui(lo, 5, MPFR_RNDD); },
      [](mpfr_ptr hi) { mpfr_sqrt_ui(hi, 5, MPFR_RNDU); });
}

CertifiedReal golden_ratio(Precision precision) { return (sqrt5(precision) + 1) / 2; }

CertifiedReal golden_conjugate_abs(Precision precision) { return (sqrt5(precision) - 1) / 2; }

CertifiedReal log_golden_ratio(Precision precision) { return log(golden_ratio(precision)); }

}  // namespace fibprod
