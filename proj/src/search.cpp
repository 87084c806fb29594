#include "fibprod/search.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "fibprod/certified_real.hpp"

namespace fibprod {

std::string to_string(const SolutionTriple& t) {
  return "(" + std::to_string(t.k) + "," + std::to_string(t.m) + "," + std::to_string(t.n) + ")";
}

SolutionTriple normalized(SequenceIndex k, SequenceIndex m, SequenceIndex n) {
  return m <= n ? SolutionTriple{k, m, n} : SolutionTriple{k, n, m};
}

bool satisfies(EquationKind kind, const SolutionTriple& t) {
  if (kind == EquationKind::fib_equals_lucas_product) return fib(t.k) == lucas(t.m) * lucas(t.n);
  return lucas(t.k) == fib(t.m) * fib(t.n);
}

SequenceIndex SearchRange::k_limit(SequenceIndex m, SequenceIndex n) const {
  return k_rule ? k_rule(m, n) : n + m + 4;
}

namespace {

// Index estimate log(v * scale) / log(alpha) for v >= 1.
long estimate_index(const SequenceValue& v, const CertifiedReal& log_scale) {
  const Precision p = log_scale.precision();
  const CertifiedReal estimate =
      (log(CertifiedReal::from_integer(v, p)) + log_scale) / log_golden_ratio(p);
  return static_cast<long>(estimate.to_double() + 0.5);
}

std::vector<SequenceIndex> matching_near(const SequenceValue& v, long estimate,
                                         SequenceValue (*term)(SequenceIndex)) {
  std::vector<SequenceIndex> out;
  for (long n = std::max(1L, estimate - 2); n <= estimate + 2; ++n) {
    if (term(static_cast<SequenceIndex>(n)) == v) out.push_back(static_cast<SequenceIndex>(n));
  }
  return out;
}

}  // namespace

std::vector<SequenceIndex> fib_index_of(const SequenceValue& v) {
  if (v < 0) throw std::invalid_argument("fib_index_of needs v >= 0");
  if (v == 0) return {};
  if (v == 1) return {1, 2};
  // F_n is the nearest integer to alpha^n / sqrt5.
  const CertifiedReal log_sqrt5 = log(sqrt5(128));
  return matching_near(v, estimate_index(v, log_sqrt5), &fib);
}

std::vector<SequenceIndex> lucas_index_of(const SequenceValue& v) {
  if (v < 0) throw std::invalid_argument("lucas_index_of needs v >= 0");
  if (v == 0 || v == 2) return {};
  if (v == 1) return {1};
  // L_n is the nearest integer to alpha^n.
  return matching_near(v, estimate_index(v, CertifiedReal(128)), &lucas);
}

std::vector<SolutionTriple> enumerate_solutions(EquationKind kind, const SearchRange& range,
                                                unsigned threads) {
  if (range.n_max == 0 || range.m_max == 0) return {};
  const bool f_eq_ll = kind == EquationKind::fib_equals_lucas_product;
  std::vector<SequenceValue> factor(range.n_max + 1);
  for (SequenceIndex i = 1; i <= range.n_max; ++i) factor[i] = f_eq_ll ? lucas(i) : fib(i);

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<SequenceIndex>(threads, range.n_max));
  std::vector<std::vector<SolutionTriple>> found(threads);
  auto slice = [&](unsigned worker) {
    for (SequenceIndex n = 1 + worker; n <= range.n_max; n += threads) {
      const SequenceIndex m_top = std::min(range.m_max, n);
      for (SequenceIndex m = 1; m <= m_top; ++m) {
        const SequenceValue product = factor[m] * factor[n];
        const SequenceIndex k_max = range.k_limit(m, n);
        const auto indices = f_eq_ll ? fib_index_of(product) : lucas_index_of(product);
        for (SequenceIndex k : indices) {
          if (k <= k_max) found[worker].push_back({k, m, n});
        }
      }
    }
  };
  if (threads == 1) {
    slice(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(slice, w);
    for (auto& t : pool) t.join();
  }
  std::vector<SolutionTriple> out;
  for (auto& part : found) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SolutionTriple> enumerate_solutions_naive(EquationKind kind, const SearchRange& range) {
  std::vector<SolutionTriple> out;
  if (range.n_max == 0 || range.m_max == 0) return out;
  SequenceIndex k_top = 0;
  for (SequenceIndex n = 1; n <= range.n_max; ++n) {
    for (SequenceIndex m = 1; m <= std::min(range.m_max, n); ++m) k_top = std::max(k_top, range.k_limit(m, n));
  }
  const SequenceIndex size = std::max(k_top, range.n_max) + 2;
  std::vector<SequenceValue> F(size), L(size);
  F[0] = 0;
  F[1] = 1;
  L[0] = 2;
  L[1] = 1;
  for (SequenceIndex i = 2; i < size; ++i) {
    F[i] = F[i - 1] + F[i - 2];
    L[i] = L[i - 1] + L[i - 2];
  }
  const bool f_eq_ll = kind == EquationKind::fib_equals_lucas_product;
  const auto& lhs = f_eq_ll ? F : L;
  const auto& rhs = f_eq_ll ? L : F;
  for (SequenceIndex n = 1; n <= range.n_max; ++n) {
    for (SequenceIndex m = 1; m <= std::min(range.m_max, n); ++m) {
      const SequenceValue product = rhs[m] * rhs[n];
      const SequenceIndex k_max = range.k_limit(m, n);
      for (SequenceIndex k = 1; k <= k_max; ++k) {
        if (lhs[k] == product) out.push_back({k, m, n});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SequenceValue> common_terms(SequenceIndex limit, bool include_zero) {
  std::set<SequenceValue> fibs;
  for (SequenceIndex k = 1; k <= limit; ++k) fibs.insert(fib(k));
  std::set<SequenceValue> common;
  for (SequenceIndex n = include_zero ? 0 : 1; n <= limit; ++n) {
    SequenceValue l = lucas(n);
    if (fibs.count(l) != 0) common.insert(std::move(l));
  }
  return {common.begin(), common.end()};
}

std::vector<SolutionTriple> square_cases(EquationKind kind, SequenceIndex limit) {
  std::vector<SolutionTriple> out;
  const bool f_eq_ll = kind == EquationKind::fib_equals_lucas_product;
  for (SequenceIndex n = 1; n <= limit; ++n) {
    const SequenceValue root = f_eq_ll ? lucas(n) : fib(n);
    const SequenceValue square = root * root;
    for (SequenceIndex k : f_eq_ll ? fib_index_of(square) : lucas_index_of(square)) {
      out.push_back({k, n, n});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<SolutionTriple>& published_solution_set(EquationKind kind) {
  static const std::vector<SolutionTriple> f_eq_ll = {{1, 1, 1}, {2, 1, 1}, {4, 1, 2}, {8, 2, 4}};
  static const std::vector<SolutionTriple> l_eq_ff = {{1, 1, 1}, {1, 1, 2}, {1, 2, 2},
                                                      {3, 3, 3}, {2, 1, 4}, {2, 2, 4}};
  return kind == EquationKind::fib_equals_lucas_product ? f_eq_ll : l_eq_ff;
}

std::string to_string(ClaimVerdict verdict) {
  switch (verdict) {
    case ClaimVerdict::confirmed:
      return "confirmed";
    case ClaimVerdict::incomplete:
      return "incomplete";
    case ClaimVerdict::refuted:
      return "refuted";
  }
  return "unknown";
}

DiscrepancyReport cross_check_prior(EquationKind kind, const SearchRange& range) {
  DiscrepancyReport report;
  report.kind = kind;
  report.truth = enumerate_solutions(kind, range);
  auto with_min_index_above = [&](SequenceIndex floor) {
    std::vector<SolutionTriple> out;
    for (const auto& t : report.truth) {
      if (t.m > floor) out.push_back(t);
    }
    return out;
  };
  auto contains = [&](const SolutionTriple& t) {
    return std::find(report.truth.begin(), report.truth.end(), t) != report.truth.end();
  };

  if (kind == EquationKind::fib_equals_lucas_product) {
    {
      ClaimCheck c{"Carlitz", "(k,m,n) = (8,4,2) is the only solution with m >= n > 1", {}, {}, {}};
      const SolutionTriple claimed = normalized(8, 4, 2);
      c.witnesses = with_min_index_above(1);
      const bool only = c.witnesses.size() == 1 && c.witnesses.front() == claimed;
      c.verdict = only ? ClaimVerdict::confirmed
                       : (contains(claimed) ? ClaimVerdict::incomplete : ClaimVerdict::refuted);
      c.detail = "(8,4,2) normalizes to " + to_string(claimed) + "; solutions with both indices > 1: " +
                 std::to_string(c.witnesses.size());
      report.checks.push_back(std::move(c));
    }
    {
      ClaimCheck c{"Wang", "(k,m,n) = (4,2,1) is a solution", {}, {}, {}};
      const SolutionTriple claimed = normalized(4, 2, 1);
      const bool holds = satisfies(kind, claimed);
      c.verdict = holds ? ClaimVerdict::confirmed : ClaimVerdict::refuted;
      if (holds) c.witnesses.push_back(claimed);
      c.detail = "(4,2,1) normalizes to " + to_string(claimed) + ", one of " +
                 std::to_string(report.truth.size()) + " solutions in range";
      report.checks.push_back(std::move(c));
    }
  } else {
    {
      ClaimCheck c{"Carlitz", "no solution with m >= n > 2", {}, {}, {}};
      c.witnesses = with_min_index_above(2);
      c.verdict = c.witnesses.empty() ? ClaimVerdict::confirmed : ClaimVerdict::refuted;
      c.detail = c.witnesses.empty() ? "no solution has both indices > 2"
                                     : "counterexample " + to_string(c.witnesses.front());
      report.checks.push_back(std::move(c));
    }
    {
      ClaimCheck c{"Wang", "the equation has no solution", {}, {}, {}};
      c.witnesses = report.truth;
      c.verdict = c.witnesses.empty() ? ClaimVerdict::confirmed : ClaimVerdict::refuted;
      c.detail = std::to_string(c.witnesses.size()) + " solutions in range";
      if (contains({3, 3, 3})) c.detail += ", among them (3,3,3): L_3 = 4 = F_3 F_3";
      report.checks.push_back(std::move(c));
    }
  }
  return report;
}

}  // namespace fibprod
