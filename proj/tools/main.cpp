#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "fibprod/errors.hpp"
#include "fibprod/pipeline.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_precision = 3;
constexpr int exit_invariant = 4;

struct Options {
  std::string equation = "both";
  std::optional<std::uint64_t> m_max;
  std::optional<std::uint64_t> n_max;
  std::optional<long> precision;
  std::optional<long> precision_cap;
  std::string format = "human";
  std::string output;
  std::string tau;
  std::string mu;
};

fibprod::PipelineConfig to_config(const Options& o) {
  fibprod::PipelineConfig config;
  config.equations = fibprod::parse_equation_selection(o.equation);
  config.m_max = o.m_max;
  config.n_max = o.n_max;
  if (o.precision_cap) config.precision.cap = *o.precision_cap;
  if (o.precision) {
    config.precision.start = *o.precision;
  } else {
    config.precision.start = std::min(config.precision.start, config.precision.cap);
  }
  if (o.format == "human") {
    config.format = fibprod::OutputFormat::human;
  } else if (o.format == "structured") {
    config.format = fibprod::OutputFormat::structured;
  } else {
    throw fibprod::ConfigError("unknown format '" + o.format + "'; valid formats: human, structured");
  }
  if (!o.tau.empty() || !o.mu.empty()) {
    config.tau_mu_source = fibprod::TauMuSource::user_supplied;
    config.user_tau = o.tau;
    config.user_mu = o.mu;
  }
  return config;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw fibprod::ConfigError("cannot open output file '" + path + "'");
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fibonacci/Lucas product equations: bounds, reduction, search"};
  app.require_subcommand(1);
  Options options;
  const std::vector<std::pair<fibprod::Command, std::string>> commands = {
      {fibprod::Command::solve, "enumerate solutions over the search range"},
      {fibprod::Command::bounds, "linear-forms bound chain and constants table"},
      {fibprod::Command::reduce, "bounds plus continued-fraction reduction and fixtures"},
      {fibprod::Command::verify, "full pipeline plus the property checks"},
      {fibprod::Command::report, "full pipeline report"},
  };
  for (const auto& [command, help] : commands) {
    CLI::App* sub = app.add_subcommand(fibprod::to_string(command), help);
    sub->add_option("--equation", options.equation, "F=LL, L=FF or both")->capture_default_str();
    sub->add_option("--m-max", options.m_max, "search bound on m");
    sub->add_option("--n-max", options.n_max, "search bound on n");
    sub->add_option("--precision", options.precision, "starting precision in bits");
    sub->add_option("--precision-cap", options.precision_cap, "largest precision in bits");
    sub->add_option("--format", options.format, "human or structured")->capture_default_str();
    sub->add_option("--output", options.output, "write the report to this file");
    sub->add_option("--tau", options.tau, "user tau, e.g. log(alpha)/log(3)");
    sub->add_option("--mu", options.mu, "user mu, e.g. log(sqrt5)/log(alpha)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? exit_ok : exit_config;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const fibprod::Command command = *fibprod::parse_command(name);
  try {
    const fibprod::PipelineConfig config = to_config(options);
    const fibprod::PipelineReport report = fibprod::run_pipeline(config, command);
    emit(config.format == fibprod::OutputFormat::structured ? fibprod::serialize(report)
                                                           : fibprod::render_human(report),
         options.output);
    if (command == fibprod::Command::verify && !report.all_checks_pass()) {
      std::cerr << "verify: at least one check failed\n";
      return exit_invariant;
    }
    return exit_ok;
  } catch (const fibprod::ConfigError& error) {
    std::cerr << "configuration error: " << error.what() << '\n';
    return exit_config;
  } catch (const fibprod::PrecisionExhausted& error) {
    std::cerr << "precision exhausted: operation " << error.operation() << " at cap "
              << error.cap_bits() << " bits\n";
    return exit_precision;
  } catch (const fibprod::InvariantViolation& error) {
    std::cerr << "invariant violation: " << error.what() << '\n';
    return exit_invariant;
  } catch (const fibprod::NonConvergence& error) {
    std::cerr << "invariant violation: " << error.what() << '\n';
    return exit_invariant;
  }
}
