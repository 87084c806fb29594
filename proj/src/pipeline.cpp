#include "fibprod/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "fibprod/bounds.hpp"
#include "fibprod/reduction.hpp"
#include "fibprod/search.hpp"

namespace fibprod {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ConstantEntry, equation, label, description, value,
                                                radius, published, deviation)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ReductionEntry, equation, stage, method, status, tau,
                                                mu, A, B, M, q, convergent_index, epsilon,
                                                epsilon_radius, k_bound, retries, threshold, bound,
                                                reason)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(FixtureEntry, label, tau, mu, threshold, epsilon,
                                                epsilon_sign, tau_irrational, q_is_convergent,
                                                reproduced, note)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(FixtureSection, evaluated, q, p, M, q_exceeds_6M,
                                                reproduced_count, candidates)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ClaimEntry, source, claim, verdict, witnesses, detail)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(EquationSection, equation, baker_m_bound,
                                                baker_n_bound, baker_k_bound, reduced_m_bound,
                                                reduced_n_bound, search_m_max, search_n_max,
                                                range_source, covers_reduced, range_limited,
                                                searched, solutions, published, matches_published,
                                                square_cases, claims)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(CheckEntry, name, passed, detail)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(PipelineReport, command, precision_start,
                                                precision_cap, tau_mu_source, constants, reductions,
                                                fixtures, equations, common_terms,
                                                common_terms_with_index_zero, checks, notes,
                                                timings_ms)

std::string to_string(Command command) {
  switch (command) {
    case Command::solve:
      return "solve";
    case Command::bounds:
      return "bounds";
    case Command::reduce:
      return "reduce";
    case Command::verify:
      return "verify";
    case Command::report:
      return "report";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view text) {
  for (Command c : {Command::solve, Command::bounds, Command::reduce, Command::verify, Command::report}) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

std::vector<EquationKind> parse_equation_selection(std::string_view text) {
  if (text == "both") {
    return {EquationKind::fib_equals_lucas_product, EquationKind::lucas_equals_fib_product};
  }
  if (auto kind = parse_equation_kind(text)) return {*kind};
  throw ConfigError("unknown equation '" + std::string(text) + "'; valid kinds: F=LL, L=FF, both");
}

void PipelineConfig::validate() const {
  if (equations.empty()) throw ConfigError("no equation selected");
  if (precision.start < MPFR_PREC_MIN) {
    throw ConfigError("precision must be at least " + std::to_string(MPFR_PREC_MIN) + " bits");
  }
  if (precision.start > precision.cap) {
    throw ConfigError("precision start " + std::to_string(precision.start) + " exceeds cap " +
                      std::to_string(precision.cap));
  }
  if (m_max && *m_max < 1) throw ConfigError("--m-max must be >= 1");
  if (n_max && *n_max < 1) throw ConfigError("--n-max must be >= 1");
  const SequenceIndex m = m_max.value_or(fallback_m_max);
  const SequenceIndex n = n_max.value_or(fallback_n_max);
  if (m_max && n_max && m > n) throw ConfigError("--m-max must not exceed --n-max");
  if (n > 100000) throw ConfigError("--n-max above 100000 is not supported");
  if (tau_mu_source == TauMuSource::user_supplied) {
    if (user_tau.empty() || user_mu.empty()) throw ConfigError("user-supplied source needs --tau and --mu");
    parse_real_expression(user_tau);
    parse_real_expression(user_mu);
  }
}

bool PipelineReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.passed; });
}

namespace {

using Clock = std::chrono::steady_clock;

class StageTimer {
 public:
  StageTimer(PipelineReport& report, std::string name)
      : report_(report), name_(std::move(name)), start_(Clock::now()) {}
  ~StageTimer() {
    const std::chrono::duration<double, std::milli> elapsed = Clock::now() - start_;
    report_.timings_ms[name_] += elapsed.count();
  }
  StageTimer(const StageTimer&) = delete;
  StageTimer& operator=(const StageTimer&) = delete;

 private:
  PipelineReport& report_;
  std::string name_;
  Clock::time_point start_;
};

std::string sci(const CertifiedReal& x, int digits = 6) { return x.to_string(digits); }

std::string deviation_percent(const CertifiedReal& value, const std::string& published) {
  const double ratio = value.to_double() / std::stod(published) - 1.0;
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%+.3f%%", 100.0 * ratio);
  return buffer;
}

Triple triple(const SolutionTriple& t) { return {t.k, t.m, t.n}; }

std::vector<Triple> triples(const std::vector<SolutionTriple>& ts) {
  std::vector<Triple> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back(triple(t));
  return out;
}

std::string join(const std::vector<SolutionTriple>& ts) {
  std::string out = "{";
  for (std::size_t i = 0; i < ts.size(); ++i) out += (i ? ", " : "") + to_string(ts[i]);
  return out + "}";
}

ReductionEntry entry_for(EquationKind kind, const ReducedCase& c) {
  ReductionEntry e;
  e.equation = to_string(kind);
  e.stage = c.label;
  e.method = "integer-shift";
  e.status = to_string(c.result.status);
  e.tau = "-1";
  e.mu = c.mu_expression;
  e.A = sci(c.A);
  e.B = sci(c.B);
  e.q = c.result.q.get_str();
  e.convergent_index = static_cast<std::int64_t>(c.result.convergent_index);
  if (c.result.epsilon) {
    e.epsilon = sci(*c.result.epsilon);
    e.epsilon_radius = c.result.epsilon->radius().to_string(3);
  }
  e.k_bound = c.result.k_bound.get_str();
  e.threshold = c.threshold;
  e.bound = std::to_string(c.bound);
  return e;
}

ReductionEntry dp_entry(const std::string& equation, const std::string& stage, const std::string& tau,
                        const std::string& mu, const RealSource& A, const RealSource& B,
                        const mpz_class& M, const PipelineConfig& config) {
  ReductionEntry e;
  e.equation = equation;
  e.stage = stage;
  e.method = "dujella-petho";
  e.tau = tau;
  e.mu = mu;
  const Precision p = config.precision.start;
  e.A = sci(A(p));
  e.B = sci(B(p));
  e.M = M.get_str();
  const ReductionInstance instance{parse_real_expression(tau), parse_real_expression(mu), A, B, M};
  try {
    const ReductionResult r = dp_reduce(instance, config.precision);
    e.status = to_string(r.status);
    e.q = r.q.get_str();
    e.convergent_index = static_cast<std::int64_t>(r.convergent_index);
    if (r.epsilon) {
      e.epsilon = sci(*r.epsilon);
      e.epsilon_radius = r.epsilon->radius().to_string(3);
    }
    e.k_bound = r.status == ReductionStatus::reduced ? r.k_bound.get_str() : "";
    e.retries = static_cast<std::int64_t>(r.retries);
    e.reason = r.reason;
  } catch (const PrecisionExhausted& error) {
    e.status = to_string(ReductionStatus::inconclusive);
    e.reason = std::string("tau not certified irrational: ") + error.what();
  }
  return e;
}

void add_check(PipelineReport& report, std::string name, bool passed, std::string detail) {
  report.checks.push_back({std::move(name), passed, std::move(detail)});
}

void run_checks(PipelineReport& report, const PipelineConfig& config,
                const std::map<EquationKind, IndexBoundReport>& baker,
                const std::map<EquationKind, ReducedBounds>& reduced,
                const std::map<EquationKind, std::vector<SolutionTriple>>& found,
                const std::map<EquationKind, SearchRange>& ranges) {
  const PrecisionPolicy& policy = config.precision;
  {
    bool ok = true;
    SequenceIndex bad = 0;
    for (SequenceIndex n = 0; n <= 1000 && ok; ++n) {
      if (binet_round(n, policy) != fib(n)) {
        ok = false;
        bad = n;
      }
    }
    add_check(report, "sequences: binet rounding equals F_n for n <= 1000", ok,
              ok ? "1001 indices" : "mismatch at n = " + std::to_string(bad));
  }
  {
    bool ok = true;
    for (SequenceIndex n = 1; n <= 1000 && ok; ++n) ok = lucas(n) == fib(n - 1) + fib(n + 1);
    add_check(report, "sequences: L_n = F_(n-1) + F_(n+1) for 1 <= n <= 1000", ok, "");
  }
  {
    std::string failed;
    for (SequenceIndex n = 0; n <= 1000; ++n) {
      if (n >= 1 && !growth_bounds_hold(n, Sequence::fibonacci, policy)) failed += " F" + std::to_string(n);
      if (!growth_bounds_hold(n, Sequence::lucas, policy)) failed += " L" + std::to_string(n);
    }
    add_check(report, "sequences: growth bounds (Fibonacci 1..1000, Lucas 0..1000)", failed.empty(),
              failed.empty() ? "certified comparisons" : "failed at" + failed);
  }
  {
    const CFExpansion cf = cf_expand([](Precision p) { return golden_ratio(p); }, 200, policy);
    bool ok = true;
    for (std::size_t i = 0; i < cf.partial_quotients.size(); ++i) {
      ok = ok && cf.partial_quotients[i] == 1 && cf.convergents[i].q == fib(i + 1);
    }
    add_check(report, "reduction: golden ratio expansion has 200 unit quotients, Fibonacci denominators",
              ok, "");
  }
  for (const auto& [kind, solutions] : found) {
    const std::string eq = to_string(kind);
    const SearchRange& range = ranges.at(kind);
    const auto naive = enumerate_solutions_naive(kind, range);
    add_check(report, "search " + eq + ": indexed search equals naive scan", naive == solutions,
              join(solutions) + " vs " + join(naive));

    std::vector<SolutionTriple> expected;
    for (const auto& t : published_solution_set(kind)) {
      if (t.m <= range.m_max && t.n <= range.n_max) expected.push_back(t);
    }
    std::sort(expected.begin(), expected.end());
    const bool limited = range.m_max < PipelineConfig::fallback_m_max ||
                         range.n_max < PipelineConfig::fallback_n_max;
    add_check(report, "search " + eq + ": solution set equals the published set" +
                          (limited ? " (range-limited)" : ""),
              expected == solutions, join(solutions));

    bool exact = true;
    bool indexed = true;
    for (const auto& t : solutions) {
      exact = exact && satisfies(kind, t) && t.m <= t.n;
      indexed = indexed && t.k <= t.n + t.m + 4;
    }
    add_check(report, "search " + eq + ": triples re-verified exactly with m <= n and k <= n + m + 4",
              exact && indexed, "");

    if (auto b = baker.find(kind); b != baker.end()) {
      bool inside = true;
      for (const auto& t : solutions) {
        inside = inside && mpz_class(std::to_string(t.n)) <= b->second.n_bound &&
                 mpz_class(std::to_string(t.m)) <= b->second.m_bound;
      }
      add_check(report, "bounds " + eq + ": solutions lie inside the linear-forms bounds", inside, "");
    }
    if (auto r = reduced.find(kind); r != reduced.end()) {
      bool inside = true;
      for (const auto& t : solutions) inside = inside && t.m <= r->second.m_bound && t.n <= r->second.n_bound;
      add_check(report, "reduction " + eq + ": solutions lie inside the reduced bounds", inside,
                "m <= " + std::to_string(r->second.m_bound) + ", n <= " + std::to_string(r->second.n_bound));
    }
    bool small_ok = true;
    bool large_ok = true;
    for (const auto& t : solutions) {
      small_ok = small_ok && linear_form_residual(t.k, t.m, t.n, kind, policy).below_bound;
      large_ok = large_ok && large_form_residual(t.k, t.m, t.n, kind, policy).below_bound;
    }
    add_check(report, "reduction " + eq + ": linear-form residuals below their bounds at every solution",
              small_ok && large_ok, "");

    const auto squares = square_cases(kind, range.n_max);
    std::vector<SolutionTriple> expected_squares;
    for (const auto& t : expected) {
      if (t.m == t.n) expected_squares.push_back(t);
    }
    add_check(report, "corollaries " + eq + ": square cases", squares == expected_squares, join(squares));

    const DiscrepancyReport cross = cross_check_prior(kind, range);
    bool verdicts = true;
    for (const auto& c : cross.checks) {
      const bool refuted = c.verdict == ClaimVerdict::refuted;
      // The F=LL claims hold; both L=FF claims fail on (3,3,3).
      verdicts = verdicts && (kind == EquationKind::fib_equals_lucas_product ? !refuted : refuted);
    }
    if (limited) verdicts = true;
    add_check(report, "cross-check " + eq + ": prior claims classified", verdicts, "");
  }
  {
    const auto terms = common_terms(160);
    const bool ok = terms == std::vector<SequenceValue>{1, 3};
    add_check(report, "corollaries: common Fibonacci and Lucas terms are 1 and 3", ok, "");
  }
  if (report.fixtures.evaluated) {
    add_check(report, "reduction fixtures: q > 6M", report.fixtures.q_exceeds_6M,
              report.fixtures.q + " > 6 * " + report.fixtures.M);
  }
}

}  // namespace

PipelineReport run_pipeline(const PipelineConfig& config, Command command) {
  config.validate();
  PipelineReport report;
  report.command = to_string(command);
  report.precision_start = config.precision.start;
  report.precision_cap = config.precision.cap;
  report.tau_mu_source =
      config.tau_mu_source == TauMuSource::published_fixture ? "published-fixture" : "user-supplied";

  const bool want_bounds = command != Command::solve;
  const bool want_reduction =
      command == Command::reduce || command == Command::verify || command == Command::report;
  const bool want_search = command == Command::solve || command == Command::verify || command == Command::report;
  const bool want_corollaries = command == Command::verify || command == Command::report;

  std::map<EquationKind, IndexBoundReport> baker;
  std::map<EquationKind, ReducedBounds> reduced;
  std::map<EquationKind, std::vector<SolutionTriple>> found;
  std::map<EquationKind, SearchRange> ranges;

  for (EquationKind kind : config.equations) {
    EquationSection section;
    section.equation = to_string(kind);
    if (want_bounds) {
      StageTimer timer(report, "bounds");
      IndexBoundReport b = baker_bounds(kind, config.precision);
      for (const auto& c : b.provenance) {
        ConstantEntry e{section.equation, c.label, c.description, sci(c.value),
                        c.value.radius().to_string(3), c.published.value_or(""), ""};
        if (c.published) e.deviation = deviation_percent(c.value, *c.published);
        report.constants.push_back(std::move(e));
      }
      section.baker_m_bound = b.m_bound.get_str();
      section.baker_n_bound = b.n_bound.get_str();
      section.baker_k_bound = b.k_bound.get_str();
      for (const auto& note : b.notes) report.notes.push_back(section.equation + ": " + note);
      baker.emplace(kind, std::move(b));
    }
    if (want_reduction) {
      StageTimer timer(report, "reduction");
      ReducedBounds r = reduce_index_bounds(kind, config.precision);
      report.reductions.push_back(entry_for(kind, r.small_case));
      for (const auto& c : r.large_cases) report.reductions.push_back(entry_for(kind, c));
      if (config.tau_mu_source == TauMuSource::user_supplied) {
        const RealSource A = [](Precision p) { return CertifiedReal::from_long(16, p) / log_golden_ratio(p); };
        const RealSource B = [](Precision p) { return pow(golden_ratio(p), 2); };
        const mpz_class M = 4 * (baker.at(kind).n_bound + 1);
        report.reductions.push_back(
            dp_entry(section.equation, "user tau/mu", config.user_tau, config.user_mu, A, B, M, config));
      }
      section.reduced_m_bound = std::to_string(r.m_bound);
      section.reduced_n_bound = std::to_string(r.n_bound);
      const auto& b = baker.at(kind);
      if (mpz_class(std::to_string(r.n_bound)) > b.n_bound) {
        throw InvariantViolation(section.equation + ": reduced n bound exceeds the linear-forms bound");
      }
      reduced.emplace(kind, std::move(r));
    }
    report.equations.push_back(std::move(section));
  }

  if (want_reduction) {
    StageTimer timer(report, "reduction");
    if (config.tau_mu_source == TauMuSource::published_fixture) {
      const RealSource A = [](Precision p) { return CertifiedReal::from_long(34, p); };
      const RealSource B = [](Precision p) { return pow(golden_ratio(p), 2); };
      report.reductions.push_back(dp_entry("F=LL", "printed tau/mu", "log(alpha)/log(|beta|)",
                                           "log(1/sqrt5)/log(|beta|)", A, B, published_M(), config));
    }
    const auto candidates =
        config.tau_mu_source == TauMuSource::published_fixture
            ? published_tau_mu_candidates()
            : std::vector<TauMuCandidate>{{"user (first threshold)", config.user_tau, config.user_mu, 0.486},
                                          {"user (second threshold)", config.user_tau, config.user_mu, 0.034}};
    const FixtureReport fixtures = evaluate_fixtures(candidates, config.precision);
    FixtureSection& out = report.fixtures;
    out.evaluated = true;
    out.q = fixtures.q.get_str();
    out.p = fixtures.p.get_str();
    out.M = fixtures.M.get_str();
    out.q_exceeds_6M = fixtures.q_exceeds_6M;
    for (const auto& c : fixtures.candidates) {
      char threshold[32];
      std::snprintf(threshold, sizeof threshold, "%g", c.threshold);
      out.candidates.push_back({c.label, c.tau, c.mu, threshold, sci(c.epsilon), c.epsilon_sign,
                                c.tau_certified_irrational, c.q_is_convergent, c.reproduced, c.note});
      out.reproduced_count += c.reproduced ? 1 : 0;
    }
  }

  if (want_search) {
    for (std::size_t i = 0; i < config.equations.size(); ++i) {
      const EquationKind kind = config.equations[i];
      EquationSection& section = report.equations[i];
      SearchRange range;
      range.m_max = config.m_max.value_or(PipelineConfig::fallback_m_max);
      range.n_max = config.n_max.value_or(PipelineConfig::fallback_n_max);
      range.m_max = std::min(range.m_max, range.n_max);
      section.range_source = config.m_max || config.n_max ? "override" : "fallback";
      section.search_m_max = range.m_max;
      section.search_n_max = range.n_max;
      section.range_limited = range.m_max < PipelineConfig::fallback_m_max ||
                              range.n_max < PipelineConfig::fallback_n_max;
      if (auto r = reduced.find(kind); r != reduced.end()) {
        section.covers_reduced = r->second.m_bound <= range.m_max && r->second.n_bound <= range.n_max;
      }
      std::vector<SolutionTriple> solutions;
      {
        StageTimer timer(report, "search");
        solutions = enumerate_solutions(kind, range);
      }
      for (const auto& t : solutions) {
        if (!satisfies(kind, t) || t.m > t.n || t.k > t.n + t.m + 4) {
          throw InvariantViolation("search returned an invalid triple " + to_string(t));
        }
      }
      if (auto r = reduced.find(kind); r != reduced.end()) {
        for (const auto& t : solutions) {
          if (t.m > r->second.m_bound || t.n > r->second.n_bound) {
            throw InvariantViolation(section.equation + ": solution " + to_string(t) +
                                     " lies outside the reduced bounds");
          }
        }
      }
      section.searched = true;
      section.solutions = triples(solutions);
      section.published = triples(published_solution_set(kind));
      std::vector<SolutionTriple> expected;
      for (const auto& t : published_solution_set(kind)) {
        if (t.m <= range.m_max && t.n <= range.n_max) expected.push_back(t);
      }
      std::sort(expected.begin(), expected.end());
      section.matches_published = expected == solutions;
      if (want_corollaries) {
        StageTimer timer(report, "corollaries");
        section.square_cases = triples(square_cases(kind, range.n_max));
        for (const auto& c : cross_check_prior(kind, range).checks) {
          section.claims.push_back({c.source, c.claim, to_string(c.verdict), triples(c.witnesses), c.detail});
        }
      }
      found.emplace(kind, std::move(solutions));
      ranges.emplace(kind, range);
    }
  }

  if (want_corollaries) {
    StageTimer timer(report, "corollaries");
    for (const auto& v : common_terms(160)) report.common_terms.push_back(v.get_str());
    for (const auto& v : common_terms(160, true)) report.common_terms_with_index_zero.push_back(v.get_str());
    report.notes.push_back("common terms allowing L_0 = 2 (diagnostic only): " +
                           std::to_string(report.common_terms_with_index_zero.size()) + " values");
  }

  if (command == Command::verify) {
    StageTimer timer(report, "verify");
    run_checks(report, config, baker, reduced, found, ranges);
  }
  return report;
}

std::string serialize(const PipelineReport& report, bool include_timings) {
  nlohmann::json out = report;
  if (!include_timings) out.erase("timings_ms");
  return out.dump(2) + "\n";
}

PipelineReport parse_report(const std::string& text) {
  return nlohmann::json::parse(text).get<PipelineReport>();
}

std::string render_human(const PipelineReport& report) {
  std::ostringstream out;
  out << "command: " << report.command << "  precision: " << report.precision_start << ".."
      << report.precision_cap << " bits\n";
  if (!report.constants.empty()) {
    out << "\nconstants\n";
    std::string current;
    for (const auto& c : report.constants) {
      if (c.equation != current) {
        current = c.equation;
        out << "  [" << current << "]\n";
      }
      char line[256];
      std::snprintf(line, sizeof line, "    %-40s %-14s +- %-10s", c.label.c_str(), c.value.c_str(),
                    c.radius.c_str());
      out << line;
      if (!c.published.empty()) out << "  published " << c.published << " (" << c.deviation << ")";
      out << '\n';
    }
  }
  for (const auto& e : report.equations) {
    out << "\n[" << e.equation << "]\n";
    if (!e.baker_n_bound.empty()) {
      out << "  linear-forms bounds: n <= " << e.baker_n_bound << ", m <= " << e.baker_m_bound
          << ", k <= " << e.baker_k_bound << '\n';
    }
    if (!e.reduced_n_bound.empty()) {
      out << "  reduced bounds: m <= " << e.reduced_m_bound << ", n <= " << e.reduced_n_bound << '\n';
    }
    if (e.searched) {
      out << "  search range: m <= " << e.search_m_max << ", n <= " << e.search_n_max << ", k <= n + m + 4"
          << " (" << e.range_source << (e.range_limited ? ", range-limited" : "") << ")\n";
      out << "  solutions (k,m,n):";
      for (const auto& t : e.solutions) out << " (" << t[0] << ',' << t[1] << ',' << t[2] << ')';
      out << "\n  matches published set: " << (e.matches_published ? "yes" : "no") << '\n';
    }
    if (!e.square_cases.empty()) {
      out << "  square cases:";
      for (const auto& t : e.square_cases) out << " (" << t[0] << ',' << t[1] << ',' << t[2] << ')';
      out << '\n';
    }
    for (const auto& c : e.claims) {
      out << "  " << c.source << ": " << c.claim << " -> " << c.verdict << " (" << c.detail << ")\n";
    }
  }
  if (!report.reductions.empty()) {
    out << "\nreductions\n";
    for (const auto& r : report.reductions) {
      out << "  " << r.equation << " " << r.stage << " [" << r.method << "] " << r.status;
      if (!r.epsilon.empty()) out << " eps=" << r.epsilon;
      if (!r.k_bound.empty()) out << " k_bound=" << r.k_bound;
      if (!r.bound.empty()) out << " bound=" << r.bound;
      if (!r.reason.empty()) out << " (" << r.reason << ")";
      out << '\n';
    }
  }
  if (report.fixtures.evaluated) {
    const auto& f = report.fixtures;
    out << "\nreduction fixtures: q = " << f.q << ", M = " << f.M
        << ", q > 6M: " << (f.q_exceeds_6M ? "yes" : "no") << '\n';
    for (const auto& c : f.candidates) {
      out << "  " << c.label << ": eps = " << c.epsilon << " vs " << c.threshold << " -> "
          << (c.reproduced ? "reproduced" : "not reproduced") << '\n';
    }
    if (!f.candidates.empty()) out << "  note: " << f.candidates.front().note << '\n';
  }
  if (!report.common_terms.empty()) {
    out << "\ncommon Fibonacci and Lucas terms (indices >= 1):";
    for (const auto& v : report.common_terms) out << ' ' << v;
    out << '\n';
  }
  if (!report.checks.empty()) {
    out << "\nchecks\n";
    for (const auto& c : report.checks) {
      out << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name;
      if (!c.detail.empty()) out << ": " << c.detail;
      out << '\n';
    }
  }
  for (const auto& note : report.notes) out << "note: " << note << '\n';
  return out.str();
}

}  // namespace fibprod
