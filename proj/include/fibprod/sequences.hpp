#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fibprod/certified_real.hpp"

namespace fibprod {

using SequenceIndex = std::uint64_t;
using SequenceValue = mpz_class;

enum class Sequence { fibonacci, lucas };

std::string to_string(Sequence which);

// Exact F_n by fast doubling, O(log n) big-integer multiplications.
SequenceValue fib(SequenceIndex n);
// (F_n, F_{n+1}).
std::pair<SequenceValue, SequenceValue> fib_pair(SequenceIndex n);
// Exact L_n = 2 F_{n+1} - F_n.
SequenceValue lucas(SequenceIndex n);

// Nearest integer to alpha^n / sqrt5, with the rounding certified by
// interval refinement. Equals fib(n).
SequenceValue binet_round(SequenceIndex n, const PrecisionPolicy& policy = {});

// One inequality of the power-of-alpha growth bounds, e.g.
// "alpha^(n-2) <= F_n".
struct GrowthInequality {
  std::string statement;
  bool applicable = true;  // false when restricted away at this n
  bool holds = false;
  std::string note;
};

struct GrowthCheck {
  SequenceIndex n = 0;
  Sequence which = Sequence::fibonacci;
  std::vector<GrowthInequality> inequalities;

  bool all_hold() const;
};

// Evaluates, by certified comparison of the exact term against powers of
// alpha and of |beta| (computed independently):
//   Fibonacci, n >= 1:  alpha^(n-2)    <= F_n <= alpha^(n-1)
//                       |beta|^-(n-2)  <= F_n <= |beta|^-(n-1)
//   Lucas, n >= 0:      alpha^(n-1)    <= L_n <= 2 alpha^n
//                       |beta|^-(n-1)  <= L_n <= |beta|^-(n+1)   (upper: n >= 1)
// Fibonacci at n = 0 throws std::invalid_argument (F_0 = 0 has no positive
// lower bound). L_0 = 2 exceeds |beta|^-1 = alpha, so that single upper
// bound is marked not applicable at n = 0.
GrowthCheck check_growth_bounds(SequenceIndex n, Sequence which,
                                const PrecisionPolicy& policy = {});

bool growth_bounds_hold(SequenceIndex n, Sequence which, const PrecisionPolicy& policy = {});

}  // namespace fibprod
