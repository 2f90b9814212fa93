#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "help.hpp"
#include "phaselab/cli.hpp"

namespace phaselab::cli {
namespace {

struct CommandSpec {
  Command command;
  const char* name;
  const char* description;
};

constexpr CommandSpec kCommands[] = {
    {Command::Orbit, "orbit", "iterate the failure-probability map from eps0"},
    {Command::Classify, "classify", "regime of theta; with eps0 also the limit of the orbit"},
    {Command::Constants, "constants", "closed-form landmarks d, a, r, g, b, c"},
    {Command::Compare, "compare", "Phase-theta against Phase-pi/3 from a common eps0"},
    {Command::Plan, "plan", "two-stage search plan for a known eps0 or database size"},
    {Command::Verify, "verify", "state-vector cross-check of the scalar map"},
    {Command::Sweep, "sweep", "one orbit per theta in a grid (csv or svg chart)"},
};

std::vector<std::string> split_grid(const std::string& grid) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(grid);
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw UsageError("empty entry in --thetas grid");
    out.push_back(item);
  }
  return out;
}

std::size_t parse_max_iter(const std::string& text, const char* source) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw UsageError(std::string(source) + " must be a positive integer; got '" + text + "'");
  }
  return value;
}

}  // namespace

RunConfig parse_command_line(int argc, const char* const* argv,
                             const std::optional<std::string>& max_iter_env) {
  CLI::App app{"Convergence analysis of the fixed-point search with equal phase shifts",
               "phase_lab"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every command");

  RunConfig config;
  std::string format = "table";
  std::string theta_grid;
  std::optional<std::size_t> max_iter;

  for (const auto& spec : kCommands) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.description);
    sub->callback([&config, command = spec.command] { config.command = command; });
    sub->add_option("--format", format, "table, csv, json or svg")
        ->check(CLI::IsMember({"table", "csv", "json", "svg"}));
    sub->add_option("--output,-o", config.output_path, "write the report to a file");
    sub->add_flag("--paper-precision", config.paper_precision,
                  "carry and print 5 significant digits (hand-calculation traces)");

    const Command c = spec.command;
    const bool takes_theta = c != Command::Plan && c != Command::Sweep;
    const bool takes_start = c == Command::Orbit || c == Command::Classify ||
                             c == Command::Compare || c == Command::Plan ||
                             c == Command::Sweep || c == Command::Verify;
    if (takes_theta) {
      sub->add_option("--theta", config.theta, "radians or pi/3, pi/2, acos(-1/4), 2pi/3, pi");
    }
    if (takes_start) {
      sub->add_option("--eps0", config.eps0, "initial failure probability");
      if (c != Command::Verify) {
        sub->add_option("--N", config.database_size, "database size; eps0 = 1 - 1/N");
      }
    }
    if (c == Command::Plan) {
      sub->add_option("--qubits", config.qubits, "database of 2^n items; eps0 = 1 - 2^-n");
      sub->add_option("--theta-first", config.theta_first, "phase of the descent stage (default pi)");
    }
    if (c == Command::Orbit || c == Command::Compare || c == Command::Sweep) {
      sub->add_option("--steps", config.steps, "number of iterations");
    }
    if (c == Command::Classify) {
      sub->add_option("--tol", config.tol, "convergence tolerance");
      sub->add_option("--max-iter", max_iter, "iteration cap (env PHASE_LAB_MAX_ITER)");
    }
    if (c == Command::Verify) {
      sub->add_option("--dim", config.dimension, "Hilbert-space dimension (2..64)");
      sub->add_option("--seed", config.seed, "seed of the random unitary");
      sub->add_option("--levels", config.levels, "recursion levels to check (0 = single step)");
    }
    if (c == Command::Sweep) {
      sub->add_option("--thetas", theta_grid, "comma-separated theta grid")->required();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (format == "csv") config.format = OutputFormat::Csv;
  else if (format == "json") config.format = OutputFormat::Json;
  else if (format == "svg") config.format = OutputFormat::Svg;
  else config.format = OutputFormat::Table;

  if (!theta_grid.empty()) config.theta_grid = split_grid(theta_grid);

  if (max_iter) {
    config.max_iter = *max_iter;
    if (config.max_iter == 0) throw UsageError("--max-iter must be positive");
  } else if (max_iter_env) {
    config.max_iter = parse_max_iter(*max_iter_env, kMaxIterEnv);
  }
  return config;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    std::optional<std::string> env;
    if (const char* value = std::getenv(kMaxIterEnv)) env = value;
    config = parse_command_line(argc, argv, env);
  } catch (const HelpRequested& help) {
    out << help.text();
    return exit_code::kSuccess;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::kUsage;
  }
  return run(config, out, err);
}

}  // namespace phaselab::cli
