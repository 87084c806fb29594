#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "fibprod/algebraic.hpp"
#include "fibprod/certified_real.hpp"
#include "fibprod/linear_forms.hpp"
#include "fibprod/sequences.hpp"

namespace fibprod {

// max{D h(x), |log x|, 0.16} for a positive x.
CertifiedReal a_value(const QuadraticNumber& x, int degree, Precision precision);
CertifiedReal a_value(const QuadraticNumber& x, int degree, const PrecisionPolicy& policy = {});

// Parameters of one application of Matveev's lower bound
//   log|Lambda| > -C (1 + log B),
//   C = 1.4 * 30^(s+3) * s^4.5 * D^2 * (1 + log D) * A_1 ... A_s.
class MatveevInstance {
 public:
  // std::invalid_argument unless degree >= 1, s = a_values.size() >= 1,
  // every A_j >= 0.16 and (if given) B >= 1.
  MatveevInstance(int degree, std::vector<CertifiedReal> a_values,
                  std::optional<CertifiedReal> exponent_bound = std::nullopt);

  // A_j = a_value(etas[j], degree), or the caller's override for slot j,
  // which must majorize a_value(etas[j], degree).
  static MatveevInstance for_numbers(const std::vector<QuadraticNumber>& etas, int degree,
                                     Precision precision,
                                     const std::vector<std::optional<CertifiedReal>>& overrides = {});

  int size() const noexcept { return static_cast<int>(a_values_.size()); }
  int degree() const noexcept { return degree_; }
  const std::vector<CertifiedReal>& a_values() const noexcept { return a_values_; }
  const std::optional<CertifiedReal>& exponent_bound() const noexcept { return exponent_bound_; }

 private:
  int degree_;
  std::vector<CertifiedReal> a_values_;
  std::optional<CertifiedReal> exponent_bound_;
};

CertifiedReal matveev_coefficient(const MatveevInstance& instance);
// -C (1 + log B); needs the instance's exponent bound.
CertifiedReal matveev_log_lower_bound(const MatveevInstance& instance);

// x * rate < log_k + coefficient * (1 + log(arg_multiplier * x))^power
struct GrowthBound {
  CertifiedReal coefficient;
  CertifiedReal arg_multiplier;
  int power = 1;
  CertifiedReal rate;
  CertifiedReal log_k;

  // Certified truth of the inequality at x (x >= 1). Throws Undecided.
  bool holds_at(const CertifiedReal& x) const;
  // C / rate: multiplies (1 + log(a x))^p in the explicit bound on x.
  CertifiedReal slope() const { return coefficient / rate; }
  // log_k / rate.
  CertifiedReal offset() const { return log_k / rate; }
  // (C + max(log_k, 0)) / rate, a single coefficient bounding x by
  // majorant * (1 + log(a y))^p whenever 1 + log(a y) >= 1.
  CertifiedReal majorant() const;
};

// Matveev lower bound -C (1 + log(a y)) against the upper bound
// log_k - rate * x gives x < (log_k + C (1 + log(a y))) / rate.
GrowthBound chain_upper_lower(const CertifiedReal& coefficient, const CertifiedReal& arg_multiplier,
                              const CertifiedReal& log_k, const CertifiedReal& rate);

// Feeds `inner` (a bound on the variable that multiplies the next Matveev
// coefficient) into a further upper bound log_k - rate * y: the result has
// coefficient per_unit * inner.majorant() and power inner.power + 1.
GrowthBound substitute_bound(const GrowthBound& inner, const CertifiedReal& per_unit_coefficient,
                             const CertifiedReal& log_k, const CertifiedReal& rate);

struct GrowthSolution {
  mpz_class bound;          // least N with the inequality failing for all x >= N
  int iterations = 0;       // fixed-point steps until the iterate moved by < 1
  CertifiedReal fixed_point;
};

// Fixed-point iteration x <- (log_k + C (1 + log(a x))^p) / rate from
// x0 = max(C, e) * 10, then certified substitution: holds at N - 1, fails
// at N, and the right-hand side grows slower than rate beyond N. Requires
// p in {0, 1, 2}. NonConvergence after `max_iterations`.
GrowthSolution solve_growth_bound(const GrowthBound& bound, const PrecisionPolicy& policy = {},
                                  int max_iterations = 200);

// k <= n + m + 4 for every solution with 1 <= m <= n of either equation,
// from alpha^(k-2) <= F_k = L_m L_n <= alpha^(n+m+2) (and the tighter
// k <= m + n - 1 for L_k = F_m F_n). Also checks the looser k < 4n for
// n >= 3. std::invalid_argument unless 1 <= m <= n.
SequenceIndex index_upper_bound(SequenceIndex m, SequenceIndex n);

// --------------------------------------------------------------------------
// The bound chain for one equation.

// A per-unit A_3 = factor * m majorizing a_value(eta_3(m), 2) for the
// large form (6 log alpha for F=LL, log 5 for L=FF).
CertifiedReal large_form_a3_per_m(EquationKind kind, Precision precision);
bool large_form_a3_majorizes(EquationKind kind, SequenceIndex m, Precision precision);

MatveevInstance small_form_instance(EquationKind kind, Precision precision);
// Instance for the large form with A_3 = large_form_a3_per_m (i.e. m = 1);
// its coefficient is the per-m constant.
MatveevInstance large_form_instance_per_m(EquationKind kind, Precision precision);

struct ChainConstant {
  std::string label;
  std::string description;
  CertifiedReal value;
  std::optional<std::string> published;  // value printed in the literature
};

struct IndexBoundReport {
  EquationKind kind = EquationKind::fib_equals_lucas_product;
  mpz_class k_bound;
  mpz_class m_bound;
  mpz_class n_bound;
  int solver_iterations = 0;
  std::vector<ChainConstant> provenance;
  std::vector<std::string> notes;

  const ChainConstant& constant(const std::string& label) const;
};

// Runs small-form Matveev -> m bound -> large-form Matveev with m
// substituted -> squared-log bound on n -> explicit n, m, k bounds.
IndexBoundReport baker_bounds(EquationKind kind, const PrecisionPolicy& policy = {});

// Published reference values for the chain constants, keyed by the labels
// baker_bounds() uses.
struct PublishedConstant {
  EquationKind kind;
  std::string label;
  std::string printed;

  double value() const { return std::stod(printed); }
};

const std::vector<PublishedConstant>& published_constants();
std::optional<std::string> published_value(EquationKind kind, const std::string& label);

}  // namespace fibprod
