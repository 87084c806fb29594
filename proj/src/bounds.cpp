#include "fibprod/bounds.hpp"

#include <stdexcept>

namespace fibprod {

namespace {

CertifiedReal point(const BigFloat& value) { return CertifiedReal::from_bounds(value, value); }

CertifiedReal constant_016(Precision p) { return CertifiedReal::from_decimal("0.16", p); }

}  // namespace

CertifiedReal a_value(const QuadraticNumber& x, int degree, Precision precision) {
  if (x.sign() <= 0) throw std::invalid_argument("A-value needs a positive number");
  const CertifiedReal weighted_height = log_height(x, precision) * degree;
  const CertifiedReal log_abs = abs(log(x.to_real(precision)));
  return max(max(weighted_height, log_abs), constant_016(precision));
}

CertifiedReal a_value(const QuadraticNumber& x, int degree, const PrecisionPolicy& policy) {
  return with_escalation(policy, "a_value", [&](Precision p) { return a_value(x, degree, p); });
}

// ------------------------------------------------------------ Matveev

MatveevInstance::MatveevInstance(int degree, std::vector<CertifiedReal> a_values,
                                 std::optional<CertifiedReal> exponent_bound)
    : degree_(degree), a_values_(std::move(a_values)), exponent_bound_(std::move(exponent_bound)) {
  if (degree_ < 1) throw std::invalid_argument("Matveev instance needs degree D >= 1");
  if (a_values_.empty()) throw std::invalid_argument("Matveev instance needs s >= 1");
  for (const auto& a : a_values_) {
    if (try_less(a, constant_016(a.precision())) == true) {
      throw std::invalid_argument("Matveev A_j below 0.16");
    }
  }
  if (exponent_bound_ &&
      try_less(*exponent_bound_, CertifiedReal::from_long(1, exponent_bound_->precision())) == true) {
    throw std::invalid_argument("Matveev exponent bound B below 1");
  }
}

MatveevInstance MatveevInstance::for_numbers(
    const std::vector<QuadraticNumber>& etas, int degree, Precision precision,
    const std::vector<std::optional<CertifiedReal>>& overrides) {
  if (overrides.size() > etas.size()) {
    throw std::invalid_argument("more A overrides than numbers");
  }
  std::vector<CertifiedReal> a_values;
  a_values.reserve(etas.size());
  for (std::size_t j = 0; j < etas.size(); ++j) {
    CertifiedReal minimal = a_value(etas[j], degree, precision);
    if (j < overrides.size() && overrides[j]) {
      if (try_less(*overrides[j], minimal) == true) {
        throw std::invalid_argument("A override does not majorize a_value(" +
                                    etas[j].to_string() + ")");
      }
      a_values.push_back(*overrides[j]);
    } else {
      a_values.push_back(std::move(minimal));
    }
  }
  return MatveevInstance(degree, std::move(a_values));
}

CertifiedReal matveev_coefficient(const MatveevInstance& instance) {
  Precision p = 0;
  for (const auto& a : instance.a_values()) p = std::max(p, a.precision());
  const long s = instance.size();
  const long d = instance.degree();
  mpz_class thirty_power;
  mpz_ui_pow_ui(thirty_power.get_mpz_t(), 30, static_cast<unsigned long>(s + 3));
  CertifiedReal c = CertifiedReal::from_rational(mpq_class(7, 5), p) *
                    CertifiedReal::from_integer(thirty_power, p);
  // s^4.5 = s^4 sqrt(s)
  const CertifiedReal s_real = CertifiedReal::from_long(s, p);
  c = c * pow(s_real, 4) * sqrt(s_real);
  const CertifiedReal d_real = CertifiedReal::from_long(d, p);
  c = c * (d_real * d_real) * (log(d_real) + 1);
  for (const auto& a : instance.a_values()) c = c * a;
  return c;
}

CertifiedReal matveev_log_lower_bound(const MatveevInstance& instance) {
  if (!instance.exponent_bound()) throw std::invalid_argument("Matveev instance has no B");
  return -(matveev_coefficient(instance) * (log(*instance.exponent_bound()) + 1));
}

// -------------------------------------------------------- growth bounds

bool GrowthBound::holds_at(const CertifiedReal& x) const {
  CertifiedReal rhs = log_k;
  if (power == 0) {
    rhs = rhs + coefficient;
  } else {
    rhs = rhs + coefficient * pow(log(arg_multiplier * x) + 1, power);
  }
  return less(x * rate, rhs);
}

CertifiedReal GrowthBound::majorant() const {
  const CertifiedReal zero(log_k.precision());
  return (coefficient + max(log_k, zero)) / rate;
}

GrowthBound chain_upper_lower(const CertifiedReal& coefficient, const CertifiedReal& arg_multiplier,
                              const CertifiedReal& log_k, const CertifiedReal& rate) {
  if (sign(rate) <= 0) throw std::invalid_argument("growth bound rate must be positive");
  return {coefficient, arg_multiplier, 1, rate, log_k};
}

GrowthBound substitute_bound(const GrowthBound& inner, const CertifiedReal& per_unit_coefficient,
                             const CertifiedReal& log_k, const CertifiedReal& rate) {
  if (sign(rate) <= 0) throw std::invalid_argument("growth bound rate must be positive");
  return {per_unit_coefficient * inner.majorant(), inner.arg_multiplier, inner.power + 1, rate,
          log_k};
}

GrowthSolution solve_growth_bound(const GrowthBound& bound, const PrecisionPolicy& policy,
                                  int max_iterations) {
  if (bound.power < 0 || bound.power > 2) {
    throw std::invalid_argument("growth bound solver supports powers 0, 1, 2");
  }
  return with_escalation(policy, "solve_growth_bound", [&](Precision p) {
    auto step = [&](const CertifiedReal& x) {
      CertifiedReal rhs = bound.log_k;
      if (bound.power == 0) {
        rhs = rhs + bound.coefficient;
      } else {
        rhs = rhs + bound.coefficient * pow(log(bound.arg_multiplier * x) + 1, bound.power);
      }
      return point((rhs / bound.rate).midpoint()).with_precision(p);
    };

    const CertifiedReal e = exp(CertifiedReal::from_long(1, p));
    CertifiedReal x = point(max(point(bound.coefficient.midpoint()), e).midpoint()) * 10;
    int iterations = 0;
    for (;;) {
      CertifiedReal next = step(x);
      if (less(abs(next - x), CertifiedReal::from_long(1, p))) break;
      x = std::move(next);
      if (++iterations > max_iterations) {
        throw NonConvergence("growth bound fixed point did not stabilize in " +
                             std::to_string(max_iterations) + " iterations");
      }
    }

    mpz_class n;
    mpfr_get_z(n.get_mpz_t(), x.midpoint().get(), MPFR_RNDD);
    n += 1;
    if (n < 1) n = 1;
    auto holds = [&](const mpz_class& candidate) {
      return bound.holds_at(CertifiedReal::from_integer(candidate, p));
    };
    for (int walked = 0;; ++walked) {
      if (walked > 4096) throw NonConvergence("growth bound substitution walk did not settle");
      if (holds(n)) {
        ++n;
      } else if (n > 1 && !holds(n - 1)) {
        --n;
      } else {
        break;
      }
    }
    // Beyond N the right-hand side must grow slower than x * rate so the
    // inequality keeps failing: C p (1 + log(a N))^(p-1) / N < rate.
    if (bound.power > 0) {
      const CertifiedReal at = CertifiedReal::from_integer(n, p);
      CertifiedReal growth = bound.coefficient * bound.power / at;
      if (bound.power == 2) growth = growth * (log(bound.arg_multiplier * at) + 1);
      if (!less(growth, bound.rate)) {
        throw NonConvergence("growth bound right-hand side still outpaces the rate at N");
      }
    }
    return GrowthSolution{n, iterations, x};
  });
}

SequenceIndex index_upper_bound(SequenceIndex m, SequenceIndex n) {
  if (m < 1 || m > n) throw std::invalid_argument("index_upper_bound needs 1 <= m <= n");
  const SequenceIndex bound = n + m + 4;
  if (n >= 3 && bound >= 4 * n) {
    throw InvariantViolation("k <= n + m + 4 does not imply k < 4n at n >= 3");
  }
  return bound;
}

// ---------------------------------------------------------------- chain

CertifiedReal large_form_a3_per_m(EquationKind kind, Precision precision) {
  if (kind == EquationKind::fib_equals_lucas_product) return log_golden_ratio(precision) * 6;
  return log(CertifiedReal::from_long(5, precision));
}

bool large_form_a3_majorizes(EquationKind kind, SequenceIndex m, Precision precision) {
  const CertifiedReal majorant = large_form_a3_per_m(kind, precision) * static_cast<long>(m);
  const CertifiedReal minimal = a_value(large_form(kind, m).eta, 2, precision);
  return try_less(majorant, minimal) != true;
}

MatveevInstance small_form_instance(EquationKind kind, Precision precision) {
  return MatveevInstance::for_numbers({QuadraticNumber::golden_ratio(),
                                       QuadraticNumber::golden_conjugate_abs(),
                                       small_form(kind).eta},
                                      2, precision);
}

MatveevInstance large_form_instance_per_m(EquationKind kind, Precision precision) {
  return MatveevInstance::for_numbers(
      {QuadraticNumber::golden_ratio(), QuadraticNumber::golden_conjugate_abs(),
       large_form(kind, 1).eta},
      2, precision, {std::nullopt, std::nullopt, large_form_a3_per_m(kind, precision)});
}

const ChainConstant& IndexBoundReport::constant(const std::string& label) const {
  for (const auto& c : provenance) {
    if (c.label == label) return c;
  }
  throw std::out_of_range("no chain constant labelled " + label);
}

const std::vector<PublishedConstant>& published_constants() {
  static const std::vector<PublishedConstant> table = {
      {EquationKind::fib_equals_lucas_product, "small_form.coefficient", "3.62e11"},
      {EquationKind::fib_equals_lucas_product, "m_bound.slope", "3.77e11"},
      {EquationKind::fib_equals_lucas_product, "large_form.per_m_coefficient", "6.49e11"},
      {EquationKind::fib_equals_lucas_product, "n_bound.squared_coefficient", "2.45e23"},
      {EquationKind::fib_equals_lucas_product, "n_bound.strict", "2.18e27"},
      {EquationKind::fib_equals_lucas_product, "n_bound.strict_from_published_squared", "2.18e27"},
      {EquationKind::fib_equals_lucas_product, "n_bound.strict_from_published_slope", "2.18e27"},
      {EquationKind::lucas_equals_fib_product, "m_bound.slope", "7.52e11"},
      {EquationKind::lucas_equals_fib_product, "n_bound.strict", "2.25e27"},
      {EquationKind::lucas_equals_fib_product, "n_bound.strict_from_published_slope", "2.25e27"},
  };
  return table;
}

std::optional<std::string> published_value(EquationKind kind, const std::string& label) {
  for (const auto& entry : published_constants()) {
    if (entry.kind == kind && entry.label == label) return entry.printed;
  }
  return std::nullopt;
}

IndexBoundReport baker_bounds(EquationKind kind, const PrecisionPolicy& policy) {
  return with_escalation(policy, "baker_bounds", [&](Precision p) {
    IndexBoundReport report;
    report.kind = kind;
    auto record = [&](std::string label, std::string description, CertifiedReal value) {
      auto published = published_value(kind, label);
      report.provenance.push_back(
          {std::move(label), std::move(description), std::move(value), std::move(published)});
    };
    // Nested solves share this attempt's precision; Undecided propagates to
    // the outer escalation.
    const PrecisionPolicy fixed{p, p};

    const CertifiedReal log_alpha = log_golden_ratio(p);
    const CertifiedReal four = CertifiedReal::from_long(4, p);
    const LinearForm small = small_form(kind);
    const LinearForm large = large_form(kind, 1);

    const MatveevInstance small_instance = small_form_instance(kind, p);
    for (int j = 0; j < small_instance.size(); ++j) {
      record("small_form.A" + std::to_string(j + 1), "A-value of the small-form base",
             small_instance.a_values()[static_cast<std::size_t>(j)]);
    }
    const CertifiedReal small_c = matveev_coefficient(small_instance);
    record("small_form.coefficient",
           "Matveev coefficient, s=3 D=2, bases alpha |beta| " + small.eta.to_string() +
               "; log " + small.name + " > -C (1 + log 4n)",
           small_c);

    const GrowthBound m_bound = chain_upper_lower(
        small_c, four, log(CertifiedReal::from_long(small.numerator, p)), log_alpha * 2);
    record("m_bound.slope", "m < slope (1 + log 4n) + offset", m_bound.slope());
    record("m_bound.offset", "log(8) / (2 log alpha)", m_bound.offset());

    const MatveevInstance large_instance = large_form_instance_per_m(kind, p);
    const CertifiedReal per_m = matveev_coefficient(large_instance);
    record("large_form.A3_per_m", "A_3 = factor * m majorizing the A-value of eta_3(m)",
           large_instance.a_values()[2]);
    record("large_form.per_m_coefficient",
           "Matveev coefficient per unit m; log " + large.name + " > -C m (1 + log 4n)", per_m);

    const CertifiedReal log_k_large = log(CertifiedReal::from_long(large.numerator, p));
    const GrowthBound n_growth = substitute_bound(m_bound, per_m, log_k_large, log_alpha);
    record("n_bound.squared_coefficient", "log " + large.name + " > -C (1 + log 4n)^2",
           n_growth.coefficient);

    const GrowthSolution n_solution = solve_growth_bound(n_growth, fixed);
    report.solver_iterations = n_solution.iterations;
    record("n_bound.strict", "n < N", CertifiedReal::from_integer(n_solution.bound, p));

    // Same chain fed with the published intermediate constants.
    if (auto slope = published_value(kind, "m_bound.slope")) {
      GrowthBound published_m = m_bound;
      published_m.coefficient = CertifiedReal::from_decimal(*slope, p) * m_bound.rate;
      const GrowthBound g = substitute_bound(published_m, per_m, log_k_large, log_alpha);
      record("n_bound.strict_from_published_slope",
             "n < N using the published m slope and the recomputed per-m coefficient",
             CertifiedReal::from_integer(solve_growth_bound(g, fixed).bound, p));
    }
    if (auto squared = published_value(kind, "n_bound.squared_coefficient")) {
      GrowthBound g = n_growth;
      g.coefficient = CertifiedReal::from_decimal(*squared, p);
      record("n_bound.strict_from_published_squared",
             "n < N using the published squared-log coefficient",
             CertifiedReal::from_integer(solve_growth_bound(g, fixed).bound, p));
    }

    report.n_bound = n_solution.bound - 1;
    const CertifiedReal n_max = CertifiedReal::from_integer(report.n_bound, p);
    const CertifiedReal m_limit =
        m_bound.slope() * (log(four * n_max) + 1) + m_bound.offset();
    mpz_class m_strict;
    mpfr_get_z(m_strict.get_mpz_t(), m_limit.upper().get(), MPFR_RNDU);
    report.m_bound = m_strict - 1;
    if (report.m_bound > report.n_bound) report.m_bound = report.n_bound;
    record("m_bound", "largest m allowed at the n bound", CertifiedReal::from_integer(report.m_bound, p));
    report.k_bound = report.n_bound + report.m_bound + 4;
    record("k_bound", "k <= n + m + 4", CertifiedReal::from_integer(report.k_bound, p));

    for (const auto& eta : {small.eta, large_form(kind, 2).eta}) {
      if (auto certificate = nonvanishing_certificate(eta)) report.notes.push_back(*certificate);
    }
    report.notes.push_back(
        "alpha and |beta| are multiplicatively dependent (alpha |beta| = 1); the three-term "
        "products collapse to eta * alpha^j");
    return report;
  });
}

}  // namespace fibprod
