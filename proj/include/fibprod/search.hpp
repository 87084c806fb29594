#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "fibprod/linear_forms.hpp"
#include "fibprod/sequences.hpp"

namespace fibprod {

struct SolutionTriple {
  SequenceIndex k = 0;
  SequenceIndex m = 0;
  SequenceIndex n = 0;

  // Orders by (n, m, k).
  friend bool operator<(const SolutionTriple& a, const SolutionTriple& b) {
    return std::tie(a.n, a.m, a.k) < std::tie(b.n, b.m, b.k);
  }
  friend bool operator==(const SolutionTriple&, const SolutionTriple&) = default;
};

std::string to_string(const SolutionTriple& t);

// (k, m, n) with m and n swapped if needed so that m <= n.
SolutionTriple normalized(SequenceIndex k, SequenceIndex m, SequenceIndex n);

// Exact check of F_k = L_m L_n or L_k = F_m F_n.
bool satisfies(EquationKind kind, const SolutionTriple& t);

using KRule = std::function<SequenceIndex(SequenceIndex m, SequenceIndex n)>;

struct SearchRange {
  SequenceIndex m_max = 75;
  SequenceIndex n_max = 160;
  // Largest k to consider for (m, n); defaults to n + m + 4.
  KRule k_rule;

  SequenceIndex k_limit(SequenceIndex m, SequenceIndex n) const;
};

// Every n >= 1 with F_n = v ({1, 2} for v = 1). Index estimated from
// log(v sqrt5) / log(alpha), confirmed exactly at the neighbours.
std::vector<SequenceIndex> fib_index_of(const SequenceValue& v);
// Every n >= 1 with L_n = v (L_0 = 2 is excluded).
std::vector<SequenceIndex> lucas_index_of(const SequenceValue& v);

// All triples with 1 <= m <= min(m_max, n), 1 <= n <= n_max and
// 1 <= k <= k_limit(m, n), sorted by (n, m, k). n-slices run on
// `threads` workers (0 = hardware concurrency). Empty when n_max = 0.
std::vector<SolutionTriple> enumerate_solutions(EquationKind kind, const SearchRange& range,
                                                unsigned threads = 0);

// Same result from a plain double loop over (m, n, k) with the sequences
// generated by their recurrences. Reference implementation for tests.
std::vector<SolutionTriple> enumerate_solutions_naive(EquationKind kind, const SearchRange& range);

// Values F_k = L_n with 1 <= k, n <= limit; with include_zero, n = 0 is
// allowed too (adding L_0 = 2 = F_3).
std::vector<SequenceValue> common_terms(SequenceIndex limit, bool include_zero = false);

// m = n solutions: F_k = L_n^2 or L_k = F_n^2, 1 <= n <= limit.
std::vector<SolutionTriple> square_cases(EquationKind kind, SequenceIndex limit);

// Solution sets printed in the literature for 1 <= m <= n, k >= 1.
const std::vector<SolutionTriple>& published_solution_set(EquationKind kind);

enum class ClaimVerdict { confirmed, incomplete, refuted };
std::string to_string(ClaimVerdict verdict);

struct ClaimCheck {
  std::string source;     // "Carlitz", "Wang"
  std::string claim;
  ClaimVerdict verdict = ClaimVerdict::confirmed;
  std::vector<SolutionTriple> witnesses;  // normalized triples supporting the verdict
  std::string detail;
};

struct DiscrepancyReport {
  EquationKind kind = EquationKind::fib_equals_lucas_product;
  std::vector<SolutionTriple> truth;  // enumerated over `range`
  std::vector<ClaimCheck> checks;
};

// Earlier published claims about the two equations, checked against the
// enumerated solutions.
DiscrepancyReport cross_check_prior(EquationKind kind, const SearchRange& range = {});

}  // namespace fibprod
