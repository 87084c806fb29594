#pragma once

// Certified real arithmetic: closed intervals [lower, upper] with MPFR
// endpoints rounded outward, so every result encloses the exact value.
// Decisions (comparisons, floor, sign) either hold for every point of the
// interval or throw Undecided; with_escalation() turns Undecided into a
// retry at doubled precision, up to a cap.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "fibprod/errors.hpp"

namespace fibprod {

using Precision = mpfr_prec_t;

struct PrecisionPolicy {
  Precision start = 256;
  Precision cap = 16384;
};

// Owning wrapper around mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(Precision precision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  Precision precision() const noexcept { return mpfr_get_prec(value_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  // Scientific notation with `digits` significant digits.
  std::string to_string(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const;

 private:
  mpfr_t value_;
  bool live_ = false;
};

class CertifiedReal {
 public:
  // The exact value 0.
  explicit CertifiedReal(Precision precision);

  static CertifiedReal from_long(long value, Precision precision);
  static CertifiedReal from_integer(const mpz_class& value, Precision precision);
  static CertifiedReal from_rational(const mpq_class& value, Precision precision);
  // Encloses a decimal literal such as "0.16" or "9.1e27" exactly.
  static CertifiedReal from_decimal(std::string_view text, Precision precision);
  // Takes ownership of already-outward-rounded endpoints.
  static CertifiedReal from_bounds(BigFloat lower, BigFloat upper);

  Precision precision() const noexcept { return lower_.precision(); }
  const BigFloat& lower() const noexcept { return lower_; }
  const BigFloat& upper() const noexcept { return upper_; }

  // mid +- rad encloses [lower, upper].
  BigFloat midpoint() const;
  BigFloat radius() const;

  double to_double() const { return midpoint().to_double(); }
  double lower_double() const { return lower_.to_double(MPFR_RNDD); }
  double upper_double() const { return upper_.to_double(MPFR_RNDU); }
  std::string to_string(int digits = 20) const { return midpoint().to_string(digits); }

  bool is_exact() const { return mpfr_equal_p(lower_.get(), upper_.get()) != 0; }
  bool contains_zero() const {
    return mpfr_sgn(lower_.get()) <= 0 && mpfr_sgn(upper_.get()) >= 0;
  }
  bool contains(const CertifiedReal& inner) const;

  // Same interval re-expressed at another precision (outward rounded).
  CertifiedReal with_precision(Precision precision) const;

 private:
  CertifiedReal(BigFloat lower, BigFloat upper);

  BigFloat lower_;
  BigFloat upper_;
};

// A real number that can be produced at any requested precision. Used
// wherever a computation may need to retry with more bits.
using RealSource = std::function<CertifiedReal(Precision)>;

CertifiedReal operator-(const CertifiedReal& x);
CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b);
CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b);
CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b);
// Throws Undecided when the divisor straddles zero, std::domain_error
// when it is exactly zero.
CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b);

CertifiedReal operator+(const CertifiedReal& a, long b);
CertifiedReal operator-(const CertifiedReal& a, long b);
CertifiedReal operator*(const CertifiedReal& a, long b);
CertifiedReal operator*(long a, const CertifiedReal& b);
CertifiedReal operator/(const CertifiedReal& a, long b);
CertifiedReal operator/(long a, const CertifiedReal& b);

CertifiedReal abs(const CertifiedReal& x);
CertifiedReal sqrt(const CertifiedReal& x);
CertifiedReal exp(const CertifiedReal& x);
CertifiedReal expm1(const CertifiedReal& x);
CertifiedReal log(const CertifiedReal& x);
CertifiedReal pow(const CertifiedReal& x, long exponent);
CertifiedReal max(const CertifiedReal& a, const CertifiedReal& b);
CertifiedReal min(const CertifiedReal& a, const CertifiedReal& b);
// Smallest interval containing both.
CertifiedReal hull(const CertifiedReal& a, const CertifiedReal& b);

// Tri-state comparisons: nullopt when the intervals overlap.
std::optional<bool> try_less(const CertifiedReal& a, const CertifiedReal& b);
std::optional<bool> try_less_equal(const CertifiedReal& a, const CertifiedReal& b);

// Decided comparisons; throw Undecided when the intervals do not settle it.
bool less(const CertifiedReal& a, const CertifiedReal& b);
bool less_equal(const CertifiedReal& a, const CertifiedReal& b);
int sign(const CertifiedReal& x);

mpz_class floor(const CertifiedReal& x);
mpz_class ceil(const CertifiedReal& x);
// Nearest integer; throws Undecided near a half-integer.
mpz_class round_nearest(const CertifiedReal& x);

// Constants of Q(sqrt 5).
CertifiedReal sqrt5(Precision precision);
CertifiedReal golden_ratio(Precision precision);
CertifiedReal golden_conjugate_abs(Precision precision);
CertifiedReal log_golden_ratio(Precision precision);

// Runs `body(precision)` starting at policy.start, doubling on Undecided
// until policy.cap. Exhaustion is reported as PrecisionExhausted naming
// `operation`.
template <class Body>
auto with_escalation(const PrecisionPolicy& policy, std::string_view operation,
                     Body&& body) -> decltype(body(Precision{})) {
  const Precision cap = std::max<Precision>(policy.cap, MPFR_PREC_MIN);
  Precision precision = std::clamp<Precision>(policy.start, MPFR_PREC_MIN, cap);
  for (;;) {
    try {
      return body(precision);
    } catch (const Undecided&) {
      if (precision >= cap) throw PrecisionExhausted(std::string(operation), cap);
      precision = std::min<Precision>(precision * 2, cap);
    }
  }
}

}  // namespace fibprod
