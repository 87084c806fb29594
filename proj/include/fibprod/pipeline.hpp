#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fibprod/certified_real.hpp"
#include "fibprod/linear_forms.hpp"
#include "fibprod/sequences.hpp"

namespace fibprod {

enum class Command { solve, bounds, reduce, verify, report };
enum class TauMuSource { published_fixture, user_supplied };
enum class OutputFormat { human, structured };

std::string to_string(Command command);
std::optional<Command> parse_command(std::string_view text);

struct PipelineConfig {
  std::vector<EquationKind> equations = {EquationKind::fib_equals_lucas_product,
                                         EquationKind::lucas_equals_fib_product};
  std::optional<SequenceIndex> m_max;
  std::optional<SequenceIndex> n_max;
  PrecisionPolicy precision;
  TauMuSource tau_mu_source = TauMuSource::published_fixture;
  std::string user_tau;  // expressions accepted by parse_real_expression
  std::string user_mu;
  OutputFormat format = OutputFormat::human;

  // Search range used when no override is given.
  static constexpr SequenceIndex fallback_m_max = 75;
  static constexpr SequenceIndex fallback_n_max = 160;

  // ConfigError unless start <= cap, overrides >= 1, m_max <= n_max, at
  // least one equation, and user-supplied sources carry both expressions.
  void validate() const;
};

// "F=LL", "L=FF" or "both". ConfigError naming the valid kinds otherwise.
std::vector<EquationKind> parse_equation_selection(std::string_view text);

struct ConstantEntry {
  std::string equation;
  std::string label;
  std::string description;
  std::string value;
  std::string radius;
  std::string published;  // empty when the literature prints none
  std::string deviation;  // value / published - 1, in percent

  friend bool operator==(const ConstantEntry&, const ConstantEntry&) = default;
};

struct ReductionEntry {
  std::string equation;
  std::string stage;
  std::string method;  // "integer-shift" or "dujella-petho"
  std::string status;
  std::string tau;
  std::string mu;
  std::string A;
  std::string B;
  std::string M;
  std::string q;
  std::int64_t convergent_index = 0;
  std::string epsilon;
  std::string epsilon_radius;
  std::string k_bound;
  std::int64_t retries = 0;
  std::uint64_t threshold = 0;
  std::string bound;
  std::string reason;

  friend bool operator==(const ReductionEntry&, const ReductionEntry&) = default;
};

struct FixtureEntry {
  std::string label;
  std::string tau;
  std::string mu;
  std::string threshold;
  std::string epsilon;
  int epsilon_sign = 0;
  bool tau_irrational = false;
  bool q_is_convergent = false;
  bool reproduced = false;
  std::string note;

  friend bool operator==(const FixtureEntry&, const FixtureEntry&) = default;
};

struct FixtureSection {
  bool evaluated = false;
  std::string q;
  std::string p;
  std::string M;
  bool q_exceeds_6M = false;
  std::int64_t reproduced_count = 0;
  std::vector<FixtureEntry> candidates;

  friend bool operator==(const FixtureSection&, const FixtureSection&) = default;
};

using Triple = std::vector<std::uint64_t>;  // {k, m, n}

struct ClaimEntry {
  std::string source;
  std::string claim;
  std::string verdict;
  std::vector<Triple> witnesses;
  std::string detail;

  friend bool operator==(const ClaimEntry&, const ClaimEntry&) = default;
};

struct EquationSection {
  std::string equation;
  std::string baker_m_bound;
  std::string baker_n_bound;
  std::string baker_k_bound;
  std::string reduced_m_bound;
  std::string reduced_n_bound;
  std::uint64_t search_m_max = 0;
  std::uint64_t search_n_max = 0;
  std::string range_source;  // "fallback" or "override"
  bool covers_reduced = false;
  bool range_limited = false;
  bool searched = false;
  std::vector<Triple> solutions;
  std::vector<Triple> published;
  bool matches_published = false;
  std::vector<Triple> square_cases;
  std::vector<ClaimEntry> claims;

  friend bool operator==(const EquationSection&, const EquationSection&) = default;
};

struct CheckEntry {
  std::string name;
  bool passed = false;
  std::string detail;

  friend bool operator==(const CheckEntry&, const CheckEntry&) = default;
};

struct PipelineReport {
  std::string command;
  std::int64_t precision_start = 0;
  std::int64_t precision_cap = 0;
  std::string tau_mu_source;
  std::vector<ConstantEntry> constants;
  std::vector<ReductionEntry> reductions;
  FixtureSection fixtures;
  std::vector<EquationSection> equations;
  std::vector<std::string> common_terms;
  std::vector<std::string> common_terms_with_index_zero;
  std::vector<CheckEntry> checks;
  std::vector<std::string> notes;
  std::map<std::string, double> timings_ms;

  bool all_checks_pass() const;
  friend bool operator==(const PipelineReport&, const PipelineReport&) = default;
};

// Runs the stages the command needs, in order: bounds -> reduction ->
// search -> corollaries and cross-checks (plus the check suite for
// verify). An inconclusive reduction falls back to the default search
// range. Throws ConfigError, PrecisionExhausted or InvariantViolation.
PipelineReport run_pipeline(const PipelineConfig& config, Command command);

// JSON document; big integers are decimal strings. Timings are omitted
// unless requested, so equal configs give byte-identical output.
std::string serialize(const PipelineReport& report, bool include_timings = false);
PipelineReport parse_report(const std::string& text);

std::string render_human(const PipelineReport& report);

}  // namespace fibprod
