#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "fibprod/bounds.hpp"

using namespace fibprod;

namespace {

constexpr Precision kBits = 256;

const long double log_alpha = std::log((1.0L + std::sqrt(5.0L)) / 2.0L);

long double matveev_oracle(int s, int d, std::initializer_list<long double> a) {
  long double c = 1.4L * std::pow(30.0L, s + 3) * std::pow(static_cast<long double>(s), 4.5L) * d * d *
                  (1 + std::log(static_cast<long double>(d)));
  for (long double x : a) c *= x;
  return c;
}

// Least integer N >= 1 at which rate x >= log_k + C (1 + log(a x))^p for
// every x >= N, found by bisection on the last crossing.
long double crossing_oracle(long double C, long double a, int p, long double rate, long double log_k) {
  auto f = [&](long double x) { return rate * x - log_k - C * std::pow(1 + std::log(a * x), p); };
  long double lo = 1;
  long double hi = std::max(C, 1.0L) * 16;
  while (f(hi) <= 0) hi *= 2;
  for (int i = 0; i < 400; ++i) {
    const long double mid = (lo + hi) / 2;
    (f(mid) > 0 ? hi : lo) = mid;
  }
  return hi;
}

// The double itself, written with enough digits to round-trip.
CertifiedReal exact(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return CertifiedReal::from_decimal(buffer, kBits);
}

double relative(double x, double y) { return std::fabs(x / y - 1); }

}  // namespace

TEST_CASE("A-values") {
  const double la = static_cast<double>(log_alpha);
  CHECK(a_value(QuadraticNumber::golden_ratio(), 2).to_double() == doctest::Approx(la));
  CHECK(a_value(QuadraticNumber::golden_conjugate_abs(), 2).to_double() == doctest::Approx(la));
  CHECK(a_value(QuadraticNumber::sqrt5(), 2).to_double() == doctest::Approx(std::log(5.0)));
  CHECK(a_value(QuadraticNumber(5), 2).to_double() == doctest::Approx(2 * std::log(5.0)));
  // 0.16 floor: h(1) = 0
  CHECK(a_value(QuadraticNumber(1), 2).to_double() == doctest::Approx(0.16));
  CHECK_THROWS_AS(a_value(QuadraticNumber(-2), 2), std::invalid_argument);
}

TEST_CASE("Matveev coefficient against a long double oracle") {
  const MatveevInstance small = small_form_instance(EquationKind::fib_equals_lucas_product, kBits);
  const double expected = static_cast<double>(matveev_oracle(3, 2, {log_alpha, log_alpha, std::log(5.0L)}));
  CHECK(relative(matveev_coefficient(small).to_double(), expected) < 1e-15);

  const MatveevInstance large = large_form_instance_per_m(EquationKind::fib_equals_lucas_product, kBits);
  const double expected_large = static_cast<double>(matveev_oracle(3, 2, {log_alpha, log_alpha, 6 * log_alpha}));
  CHECK(relative(matveev_coefficient(large).to_double(), expected_large) < 1e-15);

  for (int s = 1; s <= 5; ++s) {
    std::vector<CertifiedReal> a(static_cast<std::size_t>(s), CertifiedReal::from_long(1, kBits));
    const MatveevInstance instance(3, a);
    const double oracle = static_cast<double>(matveev_oracle(s, 3, {}));
    REQUIRE(relative(matveev_coefficient(instance).to_double(), oracle) < 1e-15);
  }
}

TEST_CASE("Matveev lower bound uses the exponent bound") {
  const std::vector<CertifiedReal> a(3, CertifiedReal::from_long(1, kBits));
  const MatveevInstance without(2, a);
  CHECK_THROWS_AS(matveev_log_lower_bound(without), std::invalid_argument);
  const MatveevInstance with(2, a, CertifiedReal::from_long(100, kBits));
  const double c = matveev_coefficient(with).to_double();
  CHECK(matveev_log_lower_bound(with).to_double() == doctest::Approx(-c * (1 + std::log(100.0))));
}

TEST_CASE("Matveev instance validation") {
  CHECK_THROWS_AS(MatveevInstance(0, {CertifiedReal::from_long(1, kBits)}), std::invalid_argument);
  CHECK_THROWS_AS(MatveevInstance(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(MatveevInstance(2, {CertifiedReal::from_decimal("0.1", kBits)}), std::invalid_argument);
  CHECK_THROWS_AS(MatveevInstance(2, {CertifiedReal::from_long(1, kBits)}, CertifiedReal::from_decimal("0.5", kBits)),
                  std::invalid_argument);
  // An override below the A-value is rejected.
  CHECK_THROWS_AS(MatveevInstance::for_numbers({QuadraticNumber(5)}, 2, kBits,
                                               {CertifiedReal::from_long(1, kBits)}),
                  std::invalid_argument);
}

TEST_CASE("per-m A_3 majorizes the exact A-value") {
  for (auto kind : {EquationKind::fib_equals_lucas_product, EquationKind::lucas_equals_fib_product}) {
    for (SequenceIndex m = 1; m <= 200; ++m) REQUIRE(large_form_a3_majorizes(kind, m, kBits));
  }
}

TEST_CASE("growth solver against a bisection oracle") {
  struct Case {
    double C, a;
    int p;
    double rate, log_k;
  };
  for (const Case& c : {Case{2.45e23, 4, 2, 0.48121182505960344, std::log(33.0)},
                        Case{1e5, 4, 1, 0.9624236501192069, std::log(8.0)},
                        Case{3.0e11, 1, 2, 0.5, 0.0},
                        Case{50, 2, 1, 1.0, 2.0},
                        Case{10, 1, 0, 2.0, 1.0}}) {
    const GrowthBound bound{exact(c.C), exact(c.a), c.p, exact(c.rate), exact(c.log_k)};
    const GrowthSolution solution = solve_growth_bound(bound);
    const long double oracle = crossing_oracle(c.C, c.a, c.p, c.rate, c.log_k);
    const double n = solution.bound.get_d();
    CHECK(std::fabs(n - static_cast<double>(std::ceil(oracle))) <= std::max(1.0, 1e-12 * n));
    CHECK(bound.holds_at(CertifiedReal::from_integer(solution.bound - 1, kBits)));
    CHECK_FALSE(bound.holds_at(CertifiedReal::from_integer(solution.bound, kBits)));
    CHECK(solution.iterations < 40);
  }
}

TEST_CASE("growth solver rejects unsupported powers") {
  GrowthBound bound{CertifiedReal::from_long(1, kBits), CertifiedReal::from_long(1, kBits), 3,
                    CertifiedReal::from_long(1, kBits), CertifiedReal::from_long(0, kBits)};
  CHECK_THROWS_AS(solve_growth_bound(bound), std::invalid_argument);
}

TEST_CASE("chain composition") {
  const CertifiedReal la = log_golden_ratio(kBits);
  const CertifiedReal C = CertifiedReal::from_long(1000, kBits);
  const CertifiedReal log8 = log(CertifiedReal::from_long(8, kBits));
  const GrowthBound inner = chain_upper_lower(C, CertifiedReal::from_long(4, kBits), log8, la * 2);
  CHECK(inner.power == 1);
  CHECK(inner.slope().to_double() == doctest::Approx(1000 / (2 * static_cast<double>(log_alpha))));
  const GrowthBound outer = substitute_bound(inner, CertifiedReal::from_long(7, kBits), log8, la);
  CHECK(outer.power == 2);
  CHECK(outer.coefficient.to_double() == doctest::Approx(7 * inner.majorant().to_double()));
  CHECK_THROWS_AS(chain_upper_lower(C, C, log8, -la), std::invalid_argument);
}

TEST_CASE("index upper bound") {
  CHECK(index_upper_bound(1, 1) == 6);
  CHECK(index_upper_bound(2, 4) == 10);
  CHECK_THROWS_AS(index_upper_bound(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(index_upper_bound(4, 3), std::invalid_argument);
  for (SequenceIndex n = 3; n <= 200; ++n) {
    for (SequenceIndex m = 1; m <= n; ++m) REQUIRE(index_upper_bound(m, n) < 4 * n);
  }
}

TEST_CASE("bound chain report") {
  const IndexBoundReport r = baker_bounds(EquationKind::fib_equals_lucas_product);
  CHECK(r.solver_iterations < 20);
  CHECK(r.m_bound <= r.n_bound);
  CHECK(r.k_bound == r.n_bound + r.m_bound + 4);
  const double n_strict = r.constant("n_bound.strict").value.to_double();
  CHECK(floor(r.constant("n_bound.strict").value) == r.n_bound + 1);
  CHECK(n_strict > 1e27);
  CHECK_THROWS_AS(r.constant("no such label"), std::out_of_range);
  // Every labelled published constant exists in the report.
  for (const auto& entry : published_constants()) {
    if (entry.kind != EquationKind::fib_equals_lucas_product) continue;
    CHECK_NOTHROW(r.constant(entry.label));
  }
}

TEST_CASE("bound chain is deterministic and precision independent") {
  const IndexBoundReport a = baker_bounds(EquationKind::lucas_equals_fib_product);
  const IndexBoundReport b = baker_bounds(EquationKind::lucas_equals_fib_product, PrecisionPolicy{1024, 4096});
  CHECK(a.n_bound == b.n_bound);
  CHECK(a.m_bound == b.m_bound);
  CHECK(a.solver_iterations == b.solver_iterations);
}

TEST_CASE("bound chain exhausts at a tiny cap") {
  CHECK_THROWS_AS(baker_bounds(EquationKind::fib_equals_lucas_product, PrecisionPolicy{8, 8}),
                  PrecisionExhausted);
}
