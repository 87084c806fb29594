#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibprod/algebraic.hpp"
#include "fibprod/certified_real.hpp"
#include "fibprod/linear_forms.hpp"
#include "fibprod/sequences.hpp"

namespace fibprod {

struct Convergent {
  mpz_class p;
  mpz_class q;
};

struct CFExpansion {
  std::vector<mpz_class> partial_quotients;
  std::vector<Convergent> convergents;
};

// First `count` partial quotients and convergents of x, each quotient
// certified (the interval at floor time lies strictly inside one unit
// cell). Restarts at doubled precision when a floor is undecided;
// PrecisionExhausted when even the cap cannot settle it, which is what a
// rational x with fewer than `count` quotients produces.
CFExpansion cf_expand(const RealSource& x, std::size_t count, const PrecisionPolicy& policy = {});

// ||x||, distance to the nearest integer. Throws Undecided when x is not
// separated from a half-integer.
CertifiedReal nearest_int_distance(const CertifiedReal& x);
CertifiedReal nearest_int_distance(const RealSource& x, const PrecisionPolicy& policy);

// 0 < m tau - n + mu < A B^-k, 1 <= m <= M.
struct ReductionInstance {
  RealSource tau;
  RealSource mu;
  RealSource A;
  RealSource B;
  mpz_class M;
};

enum class ReductionStatus { reduced, inconclusive };
std::string to_string(ReductionStatus status);

struct ReductionAttempt {
  std::size_t convergent_index = 0;
  mpz_class q;
  CertifiedReal epsilon{MPFR_PREC_MIN};
};

struct ReductionResult {
  ReductionStatus status = ReductionStatus::inconclusive;
  std::size_t convergent_index = 0;  // index of q in the expansion of tau
  mpz_class q;
  std::optional<CertifiedReal> epsilon;
  mpz_class k_bound;  // no solution with k >= k_bound when reduced
  std::size_t retries = 0;
  std::vector<ReductionAttempt> attempts;
  std::string reason;  // why the result is inconclusive
};

// Scans the convergents of tau from the first q > 6M, computing
// eps = ||mu q|| - M ||tau q||. The first certified eps > 0 gives
// k_bound = ceil(log(A q / eps) / log B); certified eps <= 0 moves on to the
// next convergent. After `max_failures` such retries the result is
// inconclusive. std::invalid_argument unless A > 0, B > 1, M >= 1.
ReductionResult dp_reduce(const ReductionInstance& instance, const PrecisionPolicy& policy = {},
                          std::size_t max_failures = 20);

// |j + mu| < A B^-t over all integers j, i.e. the inequality above with
// tau an integer. Since |j + mu| >= ||mu|| = eps, no solution has
// t >= k_bound = ceil(log(A / eps) / log B). Inconclusive when mu is a
// certified integer.
ReductionResult integer_shift_reduce(const RealSource& mu, const RealSource& A, const RealSource& B,
                                     const PrecisionPolicy& policy = {});

// |x| < 2 |e^x - 1|, decided with certified arithmetic. Requires
// 0 < |x| < 1/2 (std::invalid_argument otherwise); the interval version
// throws Undecided.
bool exp_bridge_holds(const CertifiedReal& x);
bool exp_bridge_holds(const RealSource& x, const PrecisionPolicy& policy = {});

// |eta alpha^j - 1| at a triple together with its predicted bound.
struct LinearFormResidual {
  std::string form;
  long exponent = 0;
  CertifiedReal residual{MPFR_PREC_MIN};
  CertifiedReal bound{MPFR_PREC_MIN};
  bool below_bound = false;
};

// Small form: bound 8 / alpha^2m. Requires k, m, n >= 1.
LinearFormResidual linear_form_residual(SequenceIndex k, SequenceIndex m, SequenceIndex n,
                                        EquationKind kind, const PrecisionPolicy& policy = {});
// Large form: bound 33 / alpha^n (F=LL) or 4 / alpha^n (L=FF).
LinearFormResidual large_form_residual(SequenceIndex k, SequenceIndex m, SequenceIndex n,
                                       EquationKind kind, const PrecisionPolicy& policy = {});

// Parses "log(X)/log(Y)", "-log(X)/log(Y)", "log(X)" or a plain literal X,
// where X and Y are expressions over Q(sqrt5) built from integers,
// alpha, beta, sqrt5, F<n>, L<n>, + - * / and parentheses. Returns the
// value as a precision-indexed source. ConfigError on malformed input or
// a nonpositive logarithm argument.
RealSource parse_real_expression(std::string_view text);
QuadraticNumber parse_quadratic(std::string_view text);

// ---------------------------------------------------------------------------
// The index bounds after reduction.

struct ReducedCase {
  std::string label;          // "small" or "large m=<m>"
  std::string mu_expression;  // log(eta)/log(alpha)
  CertifiedReal A{MPFR_PREC_MIN};
  CertifiedReal B{MPFR_PREC_MIN};
  ReductionResult result;
  SequenceIndex threshold = 0;  // first t at which the bridge to |Gamma| applies
  SequenceIndex bound = 0;      // resulting bound on m (small) or n (large)
};

struct ReducedBounds {
  EquationKind kind = EquationKind::fib_equals_lucas_product;
  SequenceIndex m_bound = 0;
  SequenceIndex n_bound = 0;
  ReducedCase small_case;
  std::vector<ReducedCase> large_cases;
};

// Because alpha |beta| = 1, tau = log alpha / log|beta| = -1 and both
// reductions collapse to |j + log(eta)/log(alpha)| < A B^-t with
// A = 2K / log alpha: B = alpha^2, t = m for the small form, then B = alpha,
// t = n for the large form at every m up to the small-form bound.
ReducedBounds reduce_index_bounds(EquationKind kind, const PrecisionPolicy& policy = {});

// ---------------------------------------------------------------------------
// Published reduction fixtures.

struct FixtureCandidate {
  std::string label;
  std::string tau;
  std::string mu;
  double threshold = 0.0;  // printed lower bound on eps
  CertifiedReal epsilon{MPFR_PREC_MIN};
  int epsilon_sign = 0;
  bool tau_certified_irrational = false;
  bool q_is_convergent = false;  // q appears among the convergents of tau
  bool reproduced = false;       // eps certified above the threshold
  std::string note;
};

struct FixtureReport {
  mpz_class q;
  mpz_class p;
  mpz_class M;
  bool q_exceeds_6M = false;
  std::vector<FixtureCandidate> candidates;
};

struct TauMuCandidate {
  std::string label;
  std::string tau;
  std::string mu;
  double threshold;
};

// The printed candidates: tau = log alpha / log|beta| with the small-form
// mu (threshold 0.486) and the large-form mu_m for 6 <= m <= 107
// (threshold 0.034).
std::vector<TauMuCandidate> published_tau_mu_candidates();
const mpz_class& published_q();
const mpz_class& published_p();
const mpz_class& published_M();

FixtureReport evaluate_fixtures(const std::vector<TauMuCandidate>& candidates,
                                const PrecisionPolicy& policy = {});

}  // namespace fibprod
