#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "fibprod/algebraic.hpp"
#include "fibprod/linear_forms.hpp"

using namespace fibprod;

namespace {

const QuadraticNumber alpha = QuadraticNumber::golden_ratio();
const QuadraticNumber beta_abs = QuadraticNumber::golden_conjugate_abs();
const QuadraticNumber root5 = QuadraticNumber::sqrt5();

// Mahler-measure height from the minimal polynomial, computed in long
// double straight from the quadratic formula.
long double height_oracle(long a, long b, long c) {
  const long double s5 = std::sqrt(5.0L);
  const long double x = (a + b * s5) / c;
  const long double y = (a - b * s5) / c;
  if (b == 0) {
    const long g = std::gcd(std::labs(a), std::labs(c));
    return std::log(std::max<long double>(std::labs(a / g), std::labs(c / g)));
  }
  // c^2 X^2 - 2ac X + (a^2 - 5b^2), primitive part.
  long lead = c * c, mid = -2 * a * c, cons = a * a - 5 * b * b;
  const long g = std::gcd(std::gcd(std::labs(lead), std::labs(mid)), std::labs(cons));
  lead /= g;
  return (std::log(static_cast<long double>(lead)) + std::log(std::max(1.0L, std::fabs(x))) +
          std::log(std::max(1.0L, std::fabs(y)))) /
         2;
}

}  // namespace

TEST_CASE("canonical form") {
  const QuadraticNumber x(2, 4, -6);
  CHECK(x.a() == -1);
  CHECK(x.b() == -2);
  CHECK(x.c() == 3);
  CHECK(QuadraticNumber(0, 0, -7) == QuadraticNumber(0));
  CHECK(alpha * beta_abs == QuadraticNumber(1));
  CHECK(alpha * QuadraticNumber::golden_conjugate() == QuadraticNumber(-1));
  CHECK(alpha - QuadraticNumber::golden_conjugate() == root5);
  CHECK(root5 * root5 == QuadraticNumber(5));
  CHECK_THROWS_AS(alpha / QuadraticNumber(0), std::domain_error);
}

TEST_CASE("powers of alpha follow Binet") {
  for (long n = 0; n <= 60; ++n) {
    // alpha^n = (L_n + F_n sqrt5) / 2
    const QuadraticNumber expected(lucas(n), fib(n), 2);
    REQUIRE(pow(alpha, n) == expected);
  }
  CHECK(pow(alpha, -3) * pow(alpha, 3) == QuadraticNumber(1));
}

TEST_CASE("minimal polynomials") {
  CHECK(minimal_polynomial(alpha).coefficients == std::vector<mpz_class>{1, -1, -1});
  CHECK(minimal_polynomial(root5).coefficients == std::vector<mpz_class>{1, 0, -5});
  CHECK(minimal_polynomial(QuadraticNumber(5)).coefficients == std::vector<mpz_class>{1, -5});
  CHECK(minimal_polynomial(QuadraticNumber(3, 0, 4)).coefficients == std::vector<mpz_class>{4, -3});
  CHECK(minimal_polynomial(root5 / QuadraticNumber(2)).coefficients == std::vector<mpz_class>{4, 0, -5});
  CHECK(minimal_polynomial(alpha).to_string() == "x^2 - x - 1");
  CHECK(alpha.is_unit());
  CHECK(!root5.is_unit());
  CHECK(!QuadraticNumber(1, 1, 4).is_algebraic_integer());
}

TEST_CASE("heights of the constants") {
  const double la = std::log((1 + std::sqrt(5.0)) / 2);
  CHECK(log_height(alpha).to_double() == doctest::Approx(la / 2).epsilon(1e-14));
  CHECK(log_height(beta_abs).to_double() == doctest::Approx(la / 2).epsilon(1e-14));
  CHECK(log_height(root5).to_double() == doctest::Approx(std::log(5.0) / 2).epsilon(1e-14));
  CHECK(log_height(QuadraticNumber(5)).to_double() == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  CHECK(log_height(QuadraticNumber(1)).to_double() == 0.0);
  CHECK_THROWS_AS(log_height(QuadraticNumber(0)), std::domain_error);
}

TEST_CASE("heights agree with a long double oracle") {
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<long> small(-40, 40);
  std::uniform_int_distribution<long> denom(1, 30);
  for (int i = 0; i < 300; ++i) {
    const long a = small(rng), b = small(rng), c = denom(rng);
    const QuadraticNumber x(a, b, c);
    if (x.is_zero()) continue;
    const QuadraticNumber canon = x;
    const long double expected =
        height_oracle(canon.a().get_si(), canon.b().get_si(), canon.c().get_si());
    REQUIRE(log_height(x).to_double() == doctest::Approx(static_cast<double>(expected)).epsilon(1e-12));
  }
}

TEST_CASE("height properties") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> small(-20, 20);
  std::uniform_int_distribution<long> denom(1, 12);
  auto random_nonzero = [&] {
    for (;;) {
      QuadraticNumber x(small(rng), small(rng), denom(rng));
      if (!x.is_zero()) return x;
    }
  };
  for (int i = 0; i < 100; ++i) {
    const QuadraticNumber x = random_nonzero();
    const QuadraticNumber y = random_nonzero();
    const CertifiedReal hx = log_height(x);
    const CertifiedReal hy = log_height(y);
    // h(1/x) = h(x)
    REQUIRE(log_height(QuadraticNumber(1) / x).to_double() == doctest::Approx(hx.to_double()));
    // h(x^3) = 3 h(x)
    REQUIRE(log_height(pow(x, 3)).to_double() == doctest::Approx(3 * hx.to_double()));
    // h(xy) <= h(x) + h(y), h(x + y) <= h(x) + h(y) + log 2
    REQUIRE(log_height(x * y).to_double() <= hx.to_double() + hy.to_double() + 1e-12);
    if (!(x + y).is_zero()) {
      REQUIRE(log_height(x + y).to_double() <= hx.to_double() + hy.to_double() + std::log(2.0) + 1e-12);
    }
    // conjugates share the height
    REQUIRE(log_height(x.conjugate()).to_double() == doctest::Approx(hx.to_double()));
  }
}

TEST_CASE("multiplicative dependence") {
  CHECK(multiplicatively_dependent(alpha, beta_abs));
  CHECK(multiplicatively_dependent(pow(alpha, 2), pow(alpha, 3)));
  CHECK(multiplicatively_dependent(QuadraticNumber(4), QuadraticNumber(8)));
  CHECK(multiplicatively_dependent(QuadraticNumber(1, 0, 8), QuadraticNumber(4)));
  CHECK_FALSE(multiplicatively_dependent(alpha, root5));
  CHECK_FALSE(multiplicatively_dependent(QuadraticNumber(2), QuadraticNumber(3)));
  CHECK_FALSE(multiplicatively_dependent(alpha, QuadraticNumber(5)));
  CHECK_FALSE(multiplicatively_dependent(root5, QuadraticNumber(5, 0, 2)));
  CHECK(multiplicatively_dependent(root5, QuadraticNumber(25)));
  CHECK_THROWS_AS(multiplicatively_dependent(alpha, QuadraticNumber(1)), std::invalid_argument);
  CHECK_THROWS_AS(multiplicatively_dependent(QuadraticNumber::golden_conjugate(), alpha),
                  std::invalid_argument);
}

TEST_CASE("product forms") {
  CHECK(product_equals_one(ProductForm({alpha, beta_abs}, {5, 5})));
  CHECK_FALSE(product_equals_one(ProductForm({alpha, beta_abs, root5}, {-8, -6, 1})));
  CHECK_THROWS_AS(ProductForm({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(ProductForm({alpha}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(ProductForm({QuadraticNumber::golden_conjugate()}, {1}), std::invalid_argument);
}

TEST_CASE("linear forms never vanish at any exponent") {
  for (auto kind : {EquationKind::fib_equals_lucas_product, EquationKind::lucas_equals_fib_product}) {
    CHECK(nonvanishing_certificate(small_form(kind).eta).has_value());
    for (SequenceIndex m = 1; m <= 50; ++m) {
      const QuadraticNumber eta = large_form(kind, m).eta;
      REQUIRE(nonvanishing_certificate(eta).has_value());
      for (long j = -60; j <= 60; j += 7) {
        REQUIRE_FALSE(product_equals_one(ProductForm({eta, alpha}, {1, j})));
      }
    }
  }
  CHECK_FALSE(nonvanishing_certificate(alpha).has_value());
}

TEST_CASE("three-term products collapse to the two-term forms") {
  for (auto kind : {EquationKind::fib_equals_lucas_product, EquationKind::lucas_equals_fib_product}) {
    for (long k = 1; k <= 12; ++k) {
      for (long m = 1; m <= 5; ++m) {
        for (long n = m; n <= 8; ++n) {
          const auto [b1, b2] = small_form_product_exponents(kind, k, m, n);
          const QuadraticNumber three = pow(alpha, b1) * pow(beta_abs, b2) * small_form(kind).eta;
          const QuadraticNumber two = small_form(kind).eta * pow(alpha, small_form_exponent(kind, k, m, n));
          REQUIRE(three == two);
          const auto [c1, c2] = large_form_product_exponents(kind, k, m, n);
          const QuadraticNumber eta = large_form(kind, m).eta;
          REQUIRE(pow(alpha, c1) * pow(beta_abs, c2) * eta == eta * pow(alpha, large_form_exponent(kind, k, m, n)));
        }
      }
    }
  }
}
