#include "fibprod/sequences.hpp"

#include <bit>
#include <stdexcept>

namespace fibprod {

std::string to_string(Sequence which) {
  return which == Sequence::fibonacci ? "fibonacci" : "lucas";
}

std::pair<SequenceValue, SequenceValue> fib_pair(SequenceIndex n) {
  // Invariant after processing the leading bits k of n: a = F_k, b = F_{k+1}.
  mpz_class a = 0;
  mpz_class b = 1;
  mpz_class t;
  for (int bit = std::bit_width(n) - 1; bit >= 0; --bit) {
    // F_2k = F_k (2 F_{k+1} - F_k),  F_2k+1 = F_k^2 + F_{k+1}^2
    t = 2 * b - a;
    t *= a;
    b = b * b + a * a;
    a = t;
    if ((n >> bit) & 1U) {
      a += b;
      std::swap(a, b);
    }
  }
  return {a, b};
}

SequenceValue fib(SequenceIndex n) { return fib_pair(n).first; }

SequenceValue lucas(SequenceIndex n) {
  auto [f, f_next] = fib_pair(n);
  return 2 * f_next - f;
}

SequenceValue binet_round(SequenceIndex n, const PrecisionPolicy& policy) {
  return with_escalation(policy, "binet_round", [n](Precision p) {
    const CertifiedReal approx = pow(golden_ratio(p), static_cast<long>(n)) / sqrt5(p);
    return round_nearest(approx);
  });
}

bool GrowthCheck::all_hold() const {
  for (const auto& inequality : inequalities) {
    if (inequality.applicable && !inequality.holds) return false;
  }
  return true;
}

namespace {

GrowthInequality lower_bound(std::string statement, const CertifiedReal& bound,
                             const CertifiedReal& term) {
  return {std::move(statement), true, less_equal(bound, term), {}};
}

GrowthInequality upper_bound(std::string statement, const CertifiedReal& term,
                             const CertifiedReal& bound) {
  return {std::move(statement), true, less_equal(term, bound), {}};
}

}  // namespace

GrowthCheck check_growth_bounds(SequenceIndex n, Sequence which, const PrecisionPolicy& policy) {
  if (which == Sequence::fibonacci && n == 0) {
    throw std::invalid_argument("Fibonacci growth bounds require n >= 1");
  }
  const auto e = static_cast<long>(n);
  return with_escalation(policy, "growth_bounds_hold", [&](Precision p) {
    const CertifiedReal alpha = golden_ratio(p);
    const CertifiedReal beta_abs = golden_conjugate_abs(p);
    GrowthCheck check{n, which, {}};
    auto& out = check.inequalities;
    if (which == Sequence::fibonacci) {
      const CertifiedReal term = CertifiedReal::from_integer(fib(n), p);
      out.push_back(lower_bound("alpha^(n-2) <= F_n", pow(alpha, e - 2), term));
      out.push_back(upper_bound("F_n <= alpha^(n-1)", term, pow(alpha, e - 1)));
      out.push_back(lower_bound("|beta|^-(n-2) <= F_n", pow(beta_abs, -(e - 2)), term));
      out.push_back(upper_bound("F_n <= |beta|^-(n-1)", term, pow(beta_abs, -(e - 1))));
    } else {
      const CertifiedReal term = CertifiedReal::from_integer(lucas(n), p);
      out.push_back(lower_bound("alpha^(n-1) <= L_n", pow(alpha, e - 1), term));
      out.push_back(upper_bound("L_n <= 2 alpha^n", term, 2 * pow(alpha, e)));
      out.push_back(lower_bound("|beta|^-(n-1) <= L_n", pow(beta_abs, -(e - 1)), term));
      GrowthInequality top = upper_bound("L_n <= |beta|^-(n+1)", term, pow(beta_abs, -(e + 1)));
      if (n == 0) {
        top.applicable = false;
        top.note = "restricted to n >= 1: L_0 = 2 > |beta|^-1 = alpha";
      }
      out.push_back(std::move(top));
    }
    return check;
  });
}

bool growth_bounds_hold(SequenceIndex n, Sequence which, const PrecisionPolicy& policy) {
  return check_growth_bounds(n, which, policy).all_hold();
}

}  // namespace fibprod
