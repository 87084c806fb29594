#include "fibprod/reduction.hpp"

#include <cctype>
#include <map>
#include <stdexcept>

#include "fibprod/bounds.hpp"

namespace fibprod {

namespace {

CertifiedReal half(Precision p) { return CertifiedReal::from_rational(mpq_class(1, 2), p); }

// Smallest t >= 1 with K / base^t < 1/2, i.e. base^t > 2K.
SequenceIndex bridge_threshold(long numerator, const CertifiedReal& base) {
  const CertifiedReal target = CertifiedReal::from_long(2 * numerator, base.precision());
  CertifiedReal power = base;
  SequenceIndex t = 1;
  while (!less(target, power)) {
    power = power * base;
    ++t;
  }
  return t;
}

}  // namespace

// ------------------------------------------------------- continued fractions

CFExpansion cf_expand(const RealSource& x, std::size_t count, const PrecisionPolicy& policy) {
  return with_escalation(policy, "cf_expand", [&](Precision p) {
    CFExpansion out;
    out.partial_quotients.reserve(count);
    out.convergents.reserve(count);
    CertifiedReal y = x(p);
    mpz_class p2 = 0, p1 = 1, q2 = 1, q1 = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const mpz_class a = floor(y);
      const mpz_class pi = a * p1 + p2;
      const mpz_class qi = a * q1 + q2;
      out.partial_quotients.push_back(a);
      out.convergents.push_back({pi, qi});
      p2 = p1;
      p1 = pi;
      q2 = q1;
      q1 = qi;
      if (i + 1 == count) break;
      const CertifiedReal fraction = y - CertifiedReal::from_integer(a, p);
      if (fraction.contains_zero()) throw Undecided("continued fraction remainder not separated from 0");
      y = 1 / fraction;
    }
    return out;
  });
}

CertifiedReal nearest_int_distance(const CertifiedReal& x) {
  const mpz_class nearest = round_nearest(x);
  return abs(x - CertifiedReal::from_integer(nearest, x.precision()));
}

CertifiedReal nearest_int_distance(const RealSource& x, const PrecisionPolicy& policy) {
  return with_escalation(policy, "nearest_int_distance",
                         [&](Precision p) { return nearest_int_distance(x(p)); });
}

// ------------------------------------------------------------- reduction

std::string to_string(ReductionStatus status) {
  return status == ReductionStatus::reduced ? "reduced" : "inconclusive";
}

ReductionResult dp_reduce(const ReductionInstance& instance, const PrecisionPolicy& policy,
                          std::size_t max_failures) {
  if (instance.M < 1) throw std::invalid_argument("reduction needs M >= 1");
  {
    const Precision p = std::max<Precision>(policy.start, MPFR_PREC_MIN);
    if (try_less(CertifiedReal(p), instance.A(p)) != true) {
      throw std::invalid_argument("reduction needs A > 0");
    }
    if (try_less(CertifiedReal::from_long(1, p), instance.B(p)) != true) {
      throw std::invalid_argument("reduction needs B > 1");
    }
  }
  constexpr std::size_t max_convergents = 100000;
  return with_escalation(policy, "dp_reduce", [&](Precision p) {
    ReductionResult result;
    const CertifiedReal tau = instance.tau(p);
    const CertifiedReal mu = instance.mu(p);
    const CertifiedReal M = CertifiedReal::from_integer(instance.M, p);
    const mpz_class six_m = 6 * instance.M;

    CertifiedReal y = tau;
    mpz_class q2 = 1, q1 = 0;
    for (std::size_t index = 0; index < max_convergents; ++index) {
      const mpz_class a = floor(y);
      const mpz_class q = a * q1 + q2;
      q2 = q1;
      q1 = q;
      if (q > six_m) {
        const CertifiedReal qr = CertifiedReal::from_integer(q, p);
        const CertifiedReal eps = nearest_int_distance(mu * qr) - M * nearest_int_distance(tau * qr);
        const int s = sign(eps);
        result.attempts.push_back({index, q, eps});
        if (s > 0) {
          result.status = ReductionStatus::reduced;
          result.convergent_index = index;
          result.q = q;
          result.epsilon = eps;
          mpz_class k = ceil(log(instance.A(p) * qr / eps) / log(instance.B(p)));
          result.k_bound = k < 1 ? mpz_class(1) : k;
          return result;
        }
        if (result.retries == max_failures) {
          result.reason = "eps <= 0 at " + std::to_string(result.attempts.size()) + " convergents";
          return result;
        }
        ++result.retries;
      }
      const CertifiedReal fraction = y - CertifiedReal::from_integer(a, p);
      if (fraction.contains_zero()) throw Undecided("continued fraction remainder not separated from 0");
      y = 1 / fraction;
    }
    result.reason = "no convergent denominator exceeded 6M";
    return result;
  });
}

ReductionResult integer_shift_reduce(const RealSource& mu, const RealSource& A, const RealSource& B,
                                     const PrecisionPolicy& policy) {
  return with_escalation(policy, "integer_shift_reduce", [&](Precision p) {
    ReductionResult result;
    const CertifiedReal eps = nearest_int_distance(mu(p));
    if (sign(eps) <= 0) throw Undecided("||mu|| not separated from 0");
    result.status = ReductionStatus::reduced;
    result.q = 1;
    result.epsilon = eps;
    result.attempts.push_back({0, 1, eps});
    const mpz_class k = ceil(log(A(p) / eps) / log(B(p)));
    result.k_bound = k < 0 ? mpz_class(0) : k;
    return result;
  });
}

bool exp_bridge_holds(const CertifiedReal& x) {
  const Precision p = x.precision();
  if (x.is_exact() && x.contains_zero()) throw std::invalid_argument("bridge needs x != 0");
  if (sign(x) == 0) throw std::invalid_argument("bridge needs x != 0");
  if (!less(abs(x), half(p))) throw std::invalid_argument("bridge needs |x| < 1/2");
  return less(abs(x), abs(expm1(x)) * 2);
}

bool exp_bridge_holds(const RealSource& x, const PrecisionPolicy& policy) {
  return with_escalation(policy, "exp_bridge_holds", [&](Precision p) { return exp_bridge_holds(x(p)); });
}

// --------------------------------------------------------------- residuals

namespace {

LinearFormResidual residual_of(const LinearForm& form, long exponent, long decay_index,
                               const PrecisionPolicy& policy) {
  return with_escalation(policy, "linear_form_residual", [&](Precision p) {
    LinearFormResidual out;
    out.form = form.name;
    out.exponent = exponent;
    const CertifiedReal alpha = golden_ratio(p);
    out.residual = abs(form.eta.to_real(p) * pow(alpha, exponent) - 1);
    out.bound = CertifiedReal::from_long(form.numerator, p) / pow(alpha, form.decay * decay_index);
    out.below_bound = less(out.residual, out.bound);
    return out;
  });
}

void require_positive_indices(SequenceIndex k, SequenceIndex m, SequenceIndex n) {
  if (k < 1 || m < 1 || n < 1) throw std::invalid_argument("linear form residual needs k, m, n >= 1");
}

}  // namespace

LinearFormResidual linear_form_residual(SequenceIndex k, SequenceIndex m, SequenceIndex n,
                                        EquationKind kind, const PrecisionPolicy& policy) {
  require_positive_indices(k, m, n);
  const long j = small_form_exponent(kind, static_cast<long>(k), static_cast<long>(m),
                                     static_cast<long>(n));
  return residual_of(small_form(kind), j, static_cast<long>(m), policy);
}

LinearFormResidual large_form_residual(SequenceIndex k, SequenceIndex m, SequenceIndex n,
                                       EquationKind kind, const PrecisionPolicy& policy) {
  require_positive_indices(k, m, n);
  const long j = large_form_exponent(kind, static_cast<long>(k), static_cast<long>(m),
                                     static_cast<long>(n));
  return residual_of(large_form(kind, m), j, static_cast<long>(n), policy);
}

// ------------------------------------------------------------------ parser

namespace {

class QuadraticParser {
 public:
  explicit QuadraticParser(std::string_view text) : text_(text) {}

  QuadraticNumber parse() {
    QuadraticNumber value = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("cannot parse '" + std::string(text_) + "': " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_word(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) return false;
    const std::size_t end = pos_ + word.size();
    if (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) return false;
    pos_ = end;
    return true;
  }

  mpz_class integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  SequenceIndex index() {
    const mpz_class value = integer();
    if (!value.fits_ulong_p() || value > 1000000) fail("sequence index out of range");
    return value.get_ui();
  }

  QuadraticNumber expression() {
    QuadraticNumber value = term();
    for (;;) {
      if (accept('+')) {
        value = value + term();
      } else if (accept('-')) {
        value = value - term();
      } else {
        return value;
      }
    }
  }

  QuadraticNumber term() {
    QuadraticNumber value = unary();
    for (;;) {
      if (accept('*')) {
        value = value * unary();
      } else if (accept('/')) {
        const QuadraticNumber divisor = unary();
        if (divisor.is_zero()) fail("division by zero");
        value = value / divisor;
      } else {
        return value;
      }
    }
  }

  QuadraticNumber unary() {
    if (accept('-')) return -unary();
    QuadraticNumber base = atom();
    if (accept('^')) {
      bool negative = accept('-');
      const mpz_class e = integer();
      if (!e.fits_slong_p() || e > 100000) fail("exponent out of range");
      if (negative && base.is_zero()) fail("zero to a negative power");
      base = pow(base, negative ? -e.get_si() : e.get_si());
    }
    return base;
  }

  QuadraticNumber atom() {
    skip_space();
    if (accept('(')) {
      QuadraticNumber inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (accept('|')) {
      QuadraticNumber inner = expression();
      if (!accept('|')) fail("expected '|'");
      return inner.sign() < 0 ? -inner : inner;
    }
    if (accept_word("alpha")) return QuadraticNumber::golden_ratio();
    if (accept_word("beta")) return QuadraticNumber::golden_conjugate();
    if (accept_word("sqrt5")) return QuadraticNumber::sqrt5();
    if (pos_ < text_.size() && (text_[pos_] == 'F' || text_[pos_] == 'L')) {
      const char which = text_[pos_++];
      const SequenceIndex n = index();
      return QuadraticNumber(which == 'F' ? fib(n) : lucas(n), 0, 1);
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      return QuadraticNumber(integer(), 0, 1);
    }
    fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                             : "unexpected end of input");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

// Argument of a leading "log(...)" and the rest of the text after it.
std::optional<std::pair<std::string_view, std::string_view>> split_log(std::string_view text) {
  text = trim(text);
  if (text.substr(0, 4) != "log(") return std::nullopt;
  int depth = 0;
  for (std::size_t i = 3; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')' && --depth == 0) return std::pair{text.substr(4, i - 4), trim(text.substr(i + 1))};
  }
  throw ConfigError("unbalanced parentheses in '" + std::string(text) + "'");
}

QuadraticNumber positive_argument(std::string_view text) {
  const QuadraticNumber x = parse_quadratic(text);
  if (x.sign() <= 0) throw ConfigError("log of a nonpositive number: '" + std::string(text) + "'");
  return x;
}

}  // namespace

QuadraticNumber parse_quadratic(std::string_view text) { return QuadraticParser(text).parse(); }

RealSource parse_real_expression(std::string_view text) {
  std::string_view rest = trim(text);
  bool negative = false;
  if (!rest.empty() && rest.front() == '-' && split_log(rest.substr(1))) {
    negative = true;
    rest = rest.substr(1);
  }
  const auto numerator = split_log(rest);
  if (!numerator) {
    const QuadraticNumber x = parse_quadratic(rest);
    return [x](Precision p) { return x.to_real(p); };
  }
  const QuadraticNumber x = positive_argument(numerator->first);
  std::optional<QuadraticNumber> y;
  if (!numerator->second.empty()) {
    std::string_view tail = numerator->second;
    if (tail.front() != '/') throw ConfigError("expected '/log(...)' in '" + std::string(text) + "'");
    const auto denominator = split_log(tail.substr(1));
    if (!denominator || !denominator->second.empty()) {
      throw ConfigError("expected '/log(...)' in '" + std::string(text) + "'");
    }
    y = positive_argument(denominator->first);
    if (y->is_one()) throw ConfigError("division by log(1) in '" + std::string(text) + "'");
  }
  return [x, y, negative](Precision p) {
    CertifiedReal value = log(x.to_real(p));
    if (y) value = value / log(y->to_real(p));
    return negative ? -value : value;
  };
}

// ------------------------------------------------------- reduced bounds

ReducedBounds reduce_index_bounds(EquationKind kind, const PrecisionPolicy& policy) {
  ReducedBounds out;
  out.kind = kind;
  const Precision report_precision = std::max<Precision>(policy.start, MPFR_PREC_MIN);

  auto run_case = [&](const LinearForm& form, int decay, std::string label) {
    ReducedCase c;
    c.label = std::move(label);
    c.mu_expression = "log(" + form.eta.to_string() + ")/log(alpha)";
    const QuadraticNumber eta = form.eta;
    const long numerator = form.numerator;
    const RealSource mu = [eta](Precision p) { return log(eta.to_real(p)) / log_golden_ratio(p); };
    const RealSource A = [numerator](Precision p) {
      return CertifiedReal::from_long(2 * numerator, p) / log_golden_ratio(p);
    };
    const RealSource B = [decay](Precision p) { return pow(golden_ratio(p), decay); };
    c.A = A(report_precision);
    c.B = B(report_precision);
    c.result = integer_shift_reduce(mu, A, B, policy);
    c.threshold = with_escalation(policy, "bridge_threshold",
                                  [&](Precision p) { return bridge_threshold(numerator, B(p)); });
    const mpz_class k = c.result.k_bound;
    const SequenceIndex reduced = k.fits_ulong_p() ? k.get_ui() : throw InvariantViolation("k_bound overflow");
    c.bound = std::max(c.threshold, reduced) - 1;
    return c;
  };

  const LinearForm small = small_form(kind);
  out.small_case = run_case(small, small.decay, "small");
  out.m_bound = out.small_case.bound;
  out.n_bound = out.m_bound;
  for (SequenceIndex m = 1; m <= out.m_bound; ++m) {
    const LinearForm large = large_form(kind, m);
    ReducedCase c = run_case(large, large.decay, "large m=" + std::to_string(m));
    out.n_bound = std::max(out.n_bound, c.bound);
    out.large_cases.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------- fixtures

const mpz_class& published_q() {
  static const mpz_class q("92134223612043233793615516979");
  return q;
}

const mpz_class& published_p() {
  static const mpz_class p("13949911361108065346183311454");
  return p;
}

const mpz_class& published_M() {
  static const mpz_class M = mpz_class(91) * mpz_class("100000000000000000000000000");
  return M;
}

std::vector<TauMuCandidate> published_tau_mu_candidates() {
  std::vector<TauMuCandidate> out;
  const std::string tau = "log(alpha)/log(|beta|)";
  out.push_back({"small form", tau, "log(1/sqrt5)/log(|beta|)", 0.486});
  for (int m = 6; m <= 107; ++m) {
    out.push_back({"large form m=" + std::to_string(m), tau,
                   "log(1/(sqrt5*L" + std::to_string(m) + "))/log(|beta|)", 0.034});
  }
  return out;
}

FixtureReport evaluate_fixtures(const std::vector<TauMuCandidate>& candidates,
                                const PrecisionPolicy& policy) {
  FixtureReport report;
  report.q = published_q();
  report.p = published_p();
  report.M = published_M();
  report.q_exceeds_6M = report.q > 6 * report.M;

  struct TauFacts {
    bool irrational = false;
    bool q_is_convergent = false;
    std::string note;
  };
  std::map<std::string, TauFacts> tau_cache;
  auto tau_facts = [&](const std::string& expression, const RealSource& tau) {
    auto it = tau_cache.find(expression);
    if (it != tau_cache.end()) return it->second;
    TauFacts facts;
    // Expand until the denominators pass q; a rational tau stops the
    // expansion with an undecidable quotient.
    try {
      for (std::size_t count = 64;; count *= 2) {
        const CFExpansion cf = cf_expand(tau, count, policy);
        bool passed = false;
        for (const auto& c : cf.convergents) {
          if (c.q == report.q) facts.q_is_convergent = true;
          if (c.q > report.q) passed = true;
        }
        if (passed) break;
      }
      facts.irrational = true;
      facts.note = facts.q_is_convergent ? "q is a convergent denominator of tau"
                                         : "q is not a convergent denominator of tau";
    } catch (const PrecisionExhausted&) {
      facts.note = "continued fraction of tau terminates (tau is rational at the precision cap); "
                   "q cannot be one of its convergents";
    }
    tau_cache.emplace(expression, facts);
    return facts;
  };

  for (const auto& candidate : candidates) {
    const RealSource tau = parse_real_expression(candidate.tau);
    const RealSource mu = parse_real_expression(candidate.mu);
    FixtureCandidate out;
    out.label = candidate.label;
    out.tau = candidate.tau;
    out.mu = candidate.mu;
    out.threshold = candidate.threshold;
    const TauFacts facts = tau_facts(candidate.tau, tau);
    out.tau_certified_irrational = facts.irrational;
    out.q_is_convergent = facts.q_is_convergent;
    out.note = facts.note;
    with_escalation(policy, "fixture_epsilon", [&](Precision p) {
      const CertifiedReal q = CertifiedReal::from_integer(report.q, p);
      const CertifiedReal M = CertifiedReal::from_integer(report.M, p);
      out.epsilon = nearest_int_distance(mu(p) * q) - M * nearest_int_distance(tau(p) * q);
      out.epsilon_sign = sign(out.epsilon);
      const CertifiedReal threshold = CertifiedReal::from_decimal(std::to_string(candidate.threshold), p);
      out.reproduced = less(threshold, out.epsilon);
      return 0;
    });
    report.candidates.push_back(std::move(out));
  }
  return report;
}

}  // namespace fibprod
