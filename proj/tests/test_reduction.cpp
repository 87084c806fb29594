#include <doctest.h>

#include <cmath>
#include <random>

#include "fibprod/reduction.hpp"
#include "fibprod/search.hpp"
#include "oracles.hpp"

using namespace fibprod;

namespace {

RealSource constant(long value) {
  return [value](Precision p) { return CertifiedReal::from_long(value, p); };
}

RealSource root(long value) {
  return [value](Precision p) { return sqrt(CertifiedReal::from_long(value, p)); };
}

RealSource quadratic(const oracle::Quadratic& q) {
  return [q](Precision p) {
    return (CertifiedReal::from_long(q.a, p) + sqrt(CertifiedReal::from_long(q.d, p)) * q.b) / q.c;
  };
}

}  // namespace

TEST_CASE("continued fractions of classical constants") {
  const CFExpansion golden = cf_expand([](Precision p) { return golden_ratio(p); }, 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(golden.partial_quotients[i] == 1);
    CHECK(golden.convergents[i].q == fib(i + 1));
    CHECK(golden.convergents[i].p == fib(i + 2));
  }
  const CFExpansion two = cf_expand(root(2), 5);
  CHECK(two.partial_quotients == std::vector<mpz_class>{1, 2, 2, 2, 2});
  const CFExpansion seven = cf_expand(root(7), 9);
  CHECK(seven.partial_quotients == std::vector<mpz_class>{2, 1, 1, 1, 4, 1, 1, 1, 4});
  const CFExpansion negative = cf_expand([](Precision p) { return -sqrt(CertifiedReal::from_long(2, p)); }, 4);
  CHECK(negative.partial_quotients == std::vector<mpz_class>{-2, 1, 1, 2});
}

TEST_CASE("a rational input exhausts precision") {
  CHECK_THROWS_AS(cf_expand(constant(3), 3, PrecisionPolicy{64, 512}), PrecisionExhausted);
  const RealSource minus_one = parse_real_expression("log(alpha)/log(|beta|)");
  CHECK_THROWS_AS(cf_expand(minus_one, 3, PrecisionPolicy{64, 512}), PrecisionExhausted);
}

TEST_CASE("continued fraction invariants") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const oracle::SyntheticInstance s = oracle::random_instance(rng);
    const CFExpansion cf = cf_expand(quadratic(s.tau), 40);
    const auto& c = cf.convergents;
    for (std::size_t i = 1; i < c.size(); ++i) {
      REQUIRE(cf.partial_quotients[i] >= 1);
      const mpz_class det = c[i].p * c[i - 1].q - c[i - 1].p * c[i].q;
      REQUIRE((det == 1 || det == -1));
      if (i >= 2) {
        REQUIRE(c[i].q > c[i - 1].q);
        REQUIRE(c[i].p == cf.partial_quotients[i] * c[i - 1].p + c[i - 2].p);
        REQUIRE(c[i].q == cf.partial_quotients[i] * c[i - 1].q + c[i - 2].q);
      }
    }
    // |x - p_i/q_i| < 1 / (q_i q_{i+1}), checked with the raw oracle.
    oracle::Raw x, diff, bound;
    oracle::quadratic(x.v, s.tau.a, s.tau.b, s.tau.d, s.tau.c);
    for (std::size_t i = 0; i + 1 < c.size() && i < 30; ++i) {
      mpfr_mul_z(diff.v, x.v, c[i].q.get_mpz_t(), MPFR_RNDN);
      mpfr_sub_z(diff.v, diff.v, c[i].p.get_mpz_t(), MPFR_RNDN);
      mpfr_abs(diff.v, diff.v, MPFR_RNDN);
      mpfr_set_ui(bound.v, 1, MPFR_RNDN);
      mpfr_div_z(bound.v, bound.v, c[i + 1].q.get_mpz_t(), MPFR_RNDN);
      REQUIRE(mpfr_less_p(diff.v, bound.v));
    }
  }
}

TEST_CASE("nearest integer distance") {
  const Precision p = 128;
  CHECK(nearest_int_distance(CertifiedReal::from_decimal("3.25", p)).to_double() == 0.25);
  CHECK(nearest_int_distance(CertifiedReal::from_decimal("-0.1", p)).to_double() == doctest::Approx(0.1));
  CHECK(nearest_int_distance(CertifiedReal::from_decimal("7.9", p)).to_double() == doctest::Approx(0.1));
  CHECK(nearest_int_distance(CertifiedReal::from_decimal("2.5", p)).to_double() == 0.5);
  // A blurred half-integer can never be separated from 1/2.
  auto blurred = [](Precision q) { return CertifiedReal::from_decimal("2.5", q) + sqrt5(q) - sqrt5(q); };
  CHECK_THROWS_AS(nearest_int_distance(blurred(p)), Undecided);
  CHECK_THROWS_AS(nearest_int_distance(blurred,
                                       PrecisionPolicy{64, 256}),
                  PrecisionExhausted);
  // ||q_i x|| < 1 / q_{i+1}
  const CFExpansion cf = cf_expand(root(11), 49);
  const mpz_class& q47 = cf.convergents[47].q;
  const CertifiedReal d = nearest_int_distance(sqrt(CertifiedReal::from_long(11, 512)) *
                                               CertifiedReal::from_integer(q47, 512));
  CHECK(less(d, 1 / CertifiedReal::from_integer(cf.convergents[48].q, 512)));
}

TEST_CASE("reduction on the synthetic example") {
  const ReductionInstance instance{root(2), root(3), constant(10), constant(2), 1000};
  const ReductionResult r = dp_reduce(instance);
  REQUIRE(r.status == ReductionStatus::reduced);
  CHECK(r.q > 6000);
  CHECK(sign(*r.epsilon) > 0);
  const oracle::SyntheticInstance s{{0, 1, 2, 1}, {0, 1, 3, 1}, 10, 2, 1000};
  CHECK(oracle::dp_violations(s, r.k_bound) == 0);
  // k_bound = ceil(log(A q / eps) / log B)
  const double expected = std::ceil(std::log(10.0 * r.q.get_d() / r.epsilon->to_double()) / std::log(2.0));
  CHECK(r.k_bound.get_d() == expected);
  // Deterministic, including the convergent chosen.
  const ReductionResult again = dp_reduce(instance);
  CHECK(again.convergent_index == r.convergent_index);
  CHECK(again.k_bound == r.k_bound);
}

TEST_CASE("reduction retries when eps is not positive") {
  // mu = 0 gives eps = -M ||tau q|| < 0 at every convergent.
  const ReductionInstance instance{root(2), constant(0), constant(10), constant(2), 100};
  const ReductionResult r = dp_reduce(instance, {}, 5);
  CHECK(r.status == ReductionStatus::inconclusive);
  CHECK(r.retries == 5);
  CHECK(r.attempts.size() == 6);
  for (std::size_t i = 1; i < r.attempts.size(); ++i) CHECK(r.attempts[i].q > r.attempts[i - 1].q);

  // Random instances where the first convergent fails and a later one
  // succeeds; the bound must still survive the brute-force oracle.
  std::mt19937_64 rng(3);
  int retried = 0;
  for (int trial = 0; trial < 400 && retried < 3; ++trial) {
    oracle::SyntheticInstance s = oracle::random_instance(rng);
    s.M = std::min<long>(s.M, 2000);
    const ReductionInstance i2{quadratic(s.tau), quadratic(s.mu), constant(s.A), constant(s.B), s.M};
    const ReductionResult r2 = dp_reduce(i2, {}, 60);
    if (r2.status != ReductionStatus::reduced || r2.retries == 0) continue;
    ++retried;
    CHECK(sign(r2.attempts.front().epsilon) <= 0);
    CHECK(oracle::dp_violations(s, r2.k_bound) == 0);
  }
  CHECK(retried > 0);
}

TEST_CASE("reduction validates its instance") {
  CHECK_THROWS_AS(dp_reduce({root(2), root(3), constant(0), constant(2), 10}), std::invalid_argument);
  CHECK_THROWS_AS(dp_reduce({root(2), root(3), constant(1), constant(1), 10}), std::invalid_argument);
  CHECK_THROWS_AS(dp_reduce({root(2), root(3), constant(1), constant(2), 0}), std::invalid_argument);
}

TEST_CASE("reduction soundness on random instances") {
  std::mt19937_64 rng(2024);
  int reduced = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const oracle::SyntheticInstance s = oracle::random_instance(rng);
    const ReductionInstance instance{quadratic(s.tau), quadratic(s.mu), constant(s.A), constant(s.B), s.M};
    const ReductionResult r = dp_reduce(instance);
    if (r.status != ReductionStatus::reduced) continue;
    ++reduced;
    REQUIRE(r.q > 6 * s.M);
    REQUIRE(oracle::dp_violations(s, r.k_bound) == 0);
  }
  CHECK(reduced >= 35);
}

TEST_CASE("integer shift reduction") {
  // |j + mu| >= ||mu||
  const RealSource mu = [](Precision p) { return log(sqrt5(p)) / log_golden_ratio(p); };
  const ReductionResult r = integer_shift_reduce(mu, constant(34), [](Precision p) { return pow(golden_ratio(p), 2); });
  REQUIRE(r.status == ReductionStatus::reduced);
  const double m = std::log(std::sqrt(5.0)) / std::log((1 + std::sqrt(5.0)) / 2);
  const double eps = std::fabs(m - std::round(m));
  CHECK(r.epsilon->to_double() == doctest::Approx(eps));
  const double alpha2 = std::pow((1 + std::sqrt(5.0)) / 2, 2);
  CHECK(r.k_bound.get_d() == std::ceil(std::log(34 / eps) / std::log(alpha2)));
  CHECK_THROWS_AS(integer_shift_reduce(constant(2), constant(1), constant(2), PrecisionPolicy{64, 128}),
                  PrecisionExhausted);
}

TEST_CASE("exp bridge") {
  auto at = [](const char* text) {
    return [text](Precision p) { return CertifiedReal::from_decimal(text, p); };
  };
  CHECK(exp_bridge_holds(at("0.1")));
  CHECK(exp_bridge_holds(at("-0.4")));
  CHECK_THROWS_AS(exp_bridge_holds(at("0")), std::invalid_argument);
  CHECK_THROWS_AS(exp_bridge_holds(at("0.5")), std::invalid_argument);
  CHECK_THROWS_AS(exp_bridge_holds(at("-0.7")), std::invalid_argument);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> numerator(-499999, 499999);
  for (int i = 0; i < 1000; ++i) {
    long k = 0;
    while (k == 0) k = numerator(rng);
    const mpq_class x(k, 1000000);
    REQUIRE(exp_bridge_holds([x](Precision p) { return CertifiedReal::from_rational(x, p); }));
  }
}

TEST_CASE("linear-form residuals at known solutions") {
  const auto f = EquationKind::fib_equals_lucas_product;
  const LinearFormResidual a = linear_form_residual(8, 2, 4, f);
  CHECK(a.exponent == -2);
  CHECK(a.below_bound);
  CHECK(a.bound.to_double() == doctest::Approx(8 / std::pow((1 + std::sqrt(5.0)) / 2, 4)));
  const double oracle = std::fabs(std::sqrt(5.0) * std::pow((1 + std::sqrt(5.0)) / 2, -2) - 1);
  CHECK(a.residual.to_double() == doctest::Approx(oracle));
  CHECK(linear_form_residual(4, 1, 2, f).below_bound);
  CHECK(linear_form_residual(20, 2, 4, f).residual.to_double() > 0.9);
  CHECK(large_form_residual(8, 2, 4, f).below_bound);
  CHECK_THROWS_AS(linear_form_residual(0, 1, 1, f), std::invalid_argument);
  for (auto kind : {f, EquationKind::lucas_equals_fib_product}) {
    for (const auto& t : published_solution_set(kind)) {
      CHECK(linear_form_residual(t.k, t.m, t.n, kind).below_bound);
      CHECK(large_form_residual(t.k, t.m, t.n, kind).below_bound);
    }
  }
}

TEST_CASE("residual bounds hold along Binet for large indices") {
  // For every 1 <= m <= n <= 60 the k closest to a solution still obeys the
  // residual bound when F_k is replaced by L_m L_n: test the defining
  // inequalities with the exact product in place of F_k.
  for (SequenceIndex m = 1; m <= 30; ++m) {
    for (SequenceIndex n = m; n <= 60; n += 3) {
      // |L_m L_n sqrt5 / alpha^(n+m) - 1| < 8 / alpha^(2m)
      const Precision p = 256;
      const CertifiedReal alpha = golden_ratio(p);
      const CertifiedReal value = CertifiedReal::from_integer(lucas(m) * lucas(n), p) * sqrt5(p) /
                                  pow(alpha, static_cast<long>(n + m));
      const CertifiedReal lhs = abs(value / sqrt5(p) - 1);
      REQUIRE(less(lhs, CertifiedReal::from_long(8, p) / pow(alpha, 2 * static_cast<long>(m))));
    }
  }
}

TEST_CASE("expression parser") {
  CHECK(parse_quadratic("(1+sqrt5)/2") == QuadraticNumber::golden_ratio());
  CHECK(parse_quadratic("|beta|") == QuadraticNumber::golden_conjugate_abs());
  CHECK(parse_quadratic("alpha^3") == pow(QuadraticNumber::golden_ratio(), 3));
  CHECK(parse_quadratic("1/(sqrt5*L6)") == QuadraticNumber(1) / (QuadraticNumber::sqrt5() * QuadraticNumber(18)));
  CHECK(parse_quadratic("F10 - 2*3") == QuadraticNumber(49));
  CHECK(parse_real_expression("log(alpha)/log(|beta|)")(256).to_double() == doctest::Approx(-1));
  CHECK(parse_real_expression("-log(5)")(256).to_double() == doctest::Approx(-std::log(5.0)));
  CHECK(parse_real_expression("sqrt5")(256).to_double() == doctest::Approx(std::sqrt(5.0)));
  CHECK_THROWS_AS(parse_real_expression("log(beta)"), ConfigError);
  CHECK_THROWS_AS(parse_real_expression("log(2)/log(1)"), ConfigError);
  CHECK_THROWS_AS(parse_real_expression("log(2"), ConfigError);
  CHECK_THROWS_AS(parse_quadratic("2 +"), ConfigError);
  CHECK_THROWS_AS(parse_quadratic("gamma"), ConfigError);
  CHECK_THROWS_AS(parse_quadratic("1/0"), ConfigError);
}

TEST_CASE("reduced index bounds") {
  const ReducedBounds f = reduce_index_bounds(EquationKind::fib_equals_lucas_product);
  CHECK(f.m_bound == 4);
  CHECK(f.n_bound == 16);
  CHECK(f.large_cases.size() == 4);
  // The published A for the small form is the next integer above 2*8/log alpha.
  CHECK(f.small_case.A.to_double() == doctest::Approx(16 / std::log((1 + std::sqrt(5.0)) / 2)));
  CHECK(std::ceil(f.small_case.A.to_double()) == 34);
  CHECK(std::ceil(f.large_cases[0].A.to_double()) == 138);
  const ReducedBounds l = reduce_index_bounds(EquationKind::lucas_equals_fib_product);
  CHECK(l.m_bound == 4);
  CHECK(l.n_bound == 8);
  for (auto kind : {EquationKind::fib_equals_lucas_product, EquationKind::lucas_equals_fib_product}) {
    const ReducedBounds b = reduce_index_bounds(kind);
    for (const auto& t : published_solution_set(kind)) {
      CHECK(t.m <= b.m_bound);
      CHECK(t.n <= b.n_bound);
    }
    // No solution beyond the reduced range: search past it.
    SearchRange wide;
    wide.m_max = 40;
    wide.n_max = 120;
    for (const auto& t : enumerate_solutions(kind, wide)) {
      CHECK(t.m <= b.m_bound);
      CHECK(t.n <= b.n_bound);
    }
  }
}

TEST_CASE("published reduction fixtures") {
  CHECK(published_q() > 6 * published_M());
  CHECK(published_M() == mpz_class("9100000000000000000000000000"));
  const FixtureReport report = evaluate_fixtures(published_tau_mu_candidates());
  CHECK(report.q_exceeds_6M);
  REQUIRE(report.candidates.size() == 103);
  for (const auto& c : report.candidates) {
    CHECK(c.epsilon_sign != 0);
    CHECK_FALSE(c.tau_certified_irrational);
    CHECK_FALSE(c.q_is_convergent);
  }
  // An irrational user tau: q is not among its convergents either, but the
  // expansion itself is certified.
  const FixtureReport user = evaluate_fixtures({{"user", "log(alpha)/log(3)", "log(sqrt5)/log(3)", 0.486}});
  CHECK(user.candidates.front().tau_certified_irrational);
  CHECK_FALSE(user.candidates.front().q_is_convergent);
}
