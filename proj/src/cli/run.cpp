#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "phaselab/cli.hpp"
#include "phaselab/errors.hpp"
#include "phaselab/phase_dynamics.hpp"
#include "phaselab/planner.hpp"
#include "phaselab/rate_compare.hpp"
#include "phaselab/statevector.hpp"
#include "report.hpp"

namespace phaselab::cli {
namespace {

constexpr int kPaperDigits = 5;

const char* command_name(Command c) {
  switch (c) {
    case Command::Orbit: return "orbit";
    case Command::Classify: return "classify";
    case Command::Constants: return "constants";
    case Command::Compare: return "compare";
    case Command::Plan: return "plan";
    case Command::Verify: return "verify";
    case Command::Sweep: return "sweep";
  }
  return "?";
}

nlohmann::json optional_index(const std::optional<std::size_t>& index) {
  return index ? nlohmann::json(*index) : nlohmann::json(nullptr);
}

PhaseShift require_theta(const RunConfig& config) {
  if (!config.theta) throw UsageError("--theta is required");
  return parse_phase(*config.theta);
}

/// Starting failure probability from --eps0 or --N (plan also takes --qubits).
planner::SearchProblem require_start(const RunConfig& config) {
  const int given = (config.eps0 ? 1 : 0) + (config.database_size ? 1 : 0) + (config.qubits ? 1 : 0);
  if (given == 0) throw UsageError("one of --eps0 or --N is required");
  if (given > 1) throw UsageError("--eps0, --N and --qubits are mutually exclusive");
  if (config.database_size) return planner::SearchProblem::from_database_size(*config.database_size);
  if (config.qubits) return planner::SearchProblem::from_qubits(*config.qubits);
  const double eps = *config.eps0;
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw DomainError("--eps0 must lie in [0, 1]");
  }
  return {planner::FailureProbability::from_epsilon(eps), std::nullopt};
}

dynamics::OrbitOptions orbit_options(const RunConfig& config) {
  dynamics::OrbitOptions options;
  if (config.paper_precision) options.significant_digits = kPaperDigits;
  return options;
}

std::string attractivity(double multiplier) {
  const double magnitude = std::abs(multiplier);
  if (std::abs(magnitude - 1.0) <= 1e-12) return "semi-attractive";
  return magnitude < 1.0 ? "attractive" : "repulsive";
}

void add_orbit_rows(Report& report, const dynamics::Orbit& orbit) {
  for (std::size_t m = 0; m < orbit.epsilons.size(); ++m) {
    report.rows.push_back({orbit.theta.theta(), static_cast<std::int64_t>(m), orbit.epsilons[m]});
  }
}

Report orbit_report(const RunConfig& config) {
  const auto theta = require_theta(config);
  const double eps0 = require_start(config).failure.epsilon();
  const auto orbit = dynamics::orbit(theta, eps0, config.steps, orbit_options(config));

  Report report;
  report.command = "orbit";
  report.summary = {
      {"theta", theta.theta()},
      {"theta_label", phase_label(theta)},
      {"eps0", eps0},
      {"steps", config.steps},
      {"regime", dynamics::to_string(dynamics::classify_regime(theta).tag)},
      {"hit_d_at", optional_index(orbit.hit_d_at)},
      {"hit_a_preimage_at", optional_index(orbit.hit_a_preimage_at)},
      {"arithmetic", config.paper_precision ? "5 significant digits" : "binary64"},
  };
  report.columns = {"theta", "m", "eps_m"};
  add_orbit_rows(report, orbit);
  report.series.push_back({"theta=" + phase_label(theta), orbit.epsilons});
  report.chart_title = "Phase-theta orbit from eps0=" + format_number(eps0, {6});
  return report;
}

nlohmann::json constants_json(const dynamics::PhaseConstants& pc) {
  nlohmann::json j = {{"d", pc.d}, {"a", pc.a}, {"r", pc.r}, {"g", pc.g}};
  j["b"] = pc.b ? nlohmann::json(*pc.b) : nlohmann::json(nullptr);
  j["c"] = pc.c ? nlohmann::json(*pc.c) : nlohmann::json(nullptr);
  return j;
}

Report constants_report(const RunConfig& config) {
  const auto theta = require_theta(config);
  const auto pc = dynamics::constants(theta);
  Report report;
  report.command = "constants";
  report.summary = {{"theta", theta.theta()},
                    {"theta_label", phase_label(theta)},
                    {"cos_theta", theta.cosine()},
                    {"constants", constants_json(pc)}};
  report.columns = {"quantity", "value"};
  report.rows = {{std::string("d"), pc.d}, {std::string("a"), pc.a},
                 {std::string("r"), pc.r}, {std::string("g"), pc.g}};
  if (pc.b) report.rows.push_back({std::string("b"), *pc.b});
  if (pc.c) report.rows.push_back({std::string("c"), *pc.c});
  return report;
}

struct ClassifyOutcome {
  Report report;
  bool undetermined = false;
};

ClassifyOutcome classify_report(const RunConfig& config) {
  const auto theta = require_theta(config);
  const auto regime = dynamics::classify_regime(theta);
  const auto pc = dynamics::constants(theta);
  // The fixed point the regime is about: 0 while a <= 0, otherwise a.
  const double focus = pc.a > 0.0 ? pc.a : 0.0;
  const double multiplier = dynamics::map_derivative(theta, focus);

  ClassifyOutcome outcome;
  Report& report = outcome.report;
  report.command = "classify";
  report.summary = {{"theta", theta.theta()},
                    {"theta_label", phase_label(theta)},
                    {"regime", dynamics::to_string(regime.tag)},
                    {"success_probability", regime.success_probability},
                    {"fixed_point", focus},
                    {"fixed_point_multiplier", multiplier},
                    {"fixed_point_attractivity", attractivity(multiplier)},
                    {"constants", constants_json(pc)}};
  if (regime.success_probability_bound) {
    const auto& b = *regime.success_probability_bound;
    report.summary["success_probability_bound"] = {{"lower", b.lower},
                                                   {"upper", b.upper},
                                                   {"lower_closed", b.lower_closed},
                                                   {"upper_closed", b.upper_closed}};
  } else {
    report.summary["success_probability_bound"] = nullptr;
  }
  report.columns = {"quantity", "value"};
  report.rows = {{std::string("regime"), std::string(dynamics::to_string(regime.tag))},
                 {std::string("success_probability"), regime.success_probability},
                 {std::string("fixed_point_multiplier"), multiplier}};

  const bool has_start = config.eps0 || config.database_size || config.qubits;
  if (has_start) {
    const double eps0 = require_start(config).failure.epsilon();
    dynamics::LimitOptions options;
    options.tolerance = config.tol;
    options.max_iter = config.max_iter;
    const auto limit = dynamics::analyze_limit(theta, eps0, options);
    report.summary["limit"] = {
        {"eps0", eps0},
        {"verdict", dynamics::to_string(limit.verdict)},
        {"limit_value", limit.limit_value ? nlohmann::json(*limit.limit_value) : nlohmann::json(nullptr)},
        {"iterations_used", limit.iterations_used},
        {"residual", limit.residual},
        {"tolerance", config.tol},
        {"hit_d_at", optional_index(limit.hit_d_at)},
        {"hit_a_preimage_at", optional_index(limit.hit_a_preimage_at)},
    };
    report.rows.push_back({std::string("limit_verdict"), std::string(dynamics::to_string(limit.verdict))});
    report.rows.push_back({std::string("iterations_used"), static_cast<std::int64_t>(limit.iterations_used)});
    report.rows.push_back({std::string("residual"), limit.residual});
    outcome.undetermined = limit.verdict == dynamics::LimitVerdict::Undetermined;
  }
  return outcome;
}

Report compare_report(const RunConfig& config) {
  const auto theta = require_theta(config);
  const double eps0 = require_start(config).failure.epsilon();
  const auto trace = rates::compare(theta, eps0, config.steps);

  Report report;
  report.command = "compare";
  report.summary = {
      {"theta", theta.theta()},
      {"theta_label", phase_label(theta)},
      {"eps0", eps0},
      {"steps", config.steps},
      {"threshold", trace.threshold ? nlohmann::json(*trace.threshold) : nlohmann::json(nullptr)},
      {"crossover_step", optional_index(trace.crossover_step)},
      {"ordering_consistent", trace.ordering_consistent},
      {"tie_rule", "eps equal to the threshold counts as below it"},
  };
  report.columns = {"m", "eps_theta", "eps_pi3", "delta"};
  for (std::size_t m = 0; m <= trace.steps; ++m) {
    report.rows.push_back({static_cast<std::int64_t>(m), trace.eps_theta[m], trace.eps_pi3[m],
                           trace.deltas[m]});
  }
  report.series = {{"theta=" + phase_label(theta), trace.eps_theta},
                   {"theta=pi/3", trace.eps_pi3}};
  report.chart_title = "Phase-theta against Phase-pi/3";
  return report;
}

Report plan_report(const RunConfig& config) {
  const auto problem = require_start(config);
  const auto theta_first = parse_phase(config.theta_first.value_or("pi"));
  const auto plan = planner::plan_search(problem, theta_first);

  Report report;
  report.command = "plan";
  const double eps = problem.failure.epsilon();
  report.summary = {
      {"eps0", eps},
      {"delta", problem.failure.success()},
      {"database_size", problem.database_size ? nlohmann::json(*problem.database_size)
                                              : nlohmann::json(nullptr)},
      {"theta_first", theta_first.theta()},
      {"theta_first_label", phase_label(theta_first)},
      {"stage_count", plan.stages.size()},
      {"recursion_depth", plan.recursion_depth},
      {"total_queries", plan.total_queries},
      {"final_epsilon", plan.final_epsilon()},
      {"query_accounting", "stage-2 single shot counted as one extra recursion level"},
  };
  if (eps > planner::kSingleShotLimit) {
    report.summary["n_star"] = planner::n_star(problem.failure);
    report.summary["m_star_exact"] = plan.stages.front().iterations;
    report.summary["m_star_approx"] = planner::m_star_approx(theta_first, problem.failure);
  }
  report.columns = {"stage", "theta", "theta_label", "iterations", "predicted_epsilon"};
  for (std::size_t i = 0; i < plan.stages.size(); ++i) {
    const auto& s = plan.stages[i];
    report.rows.push_back({static_cast<std::int64_t>(i + 1), s.theta.theta(), phase_label(s.theta),
                           static_cast<std::int64_t>(s.iterations), s.predicted_epsilon});
  }
  return report;
}

struct VerifyOutcome {
  Report report;
  bool passed = true;
};

VerifyOutcome verify_report(const RunConfig& config) {
  const auto theta = require_theta(config);
  if (config.dimension < 2 || config.dimension > oracle::kMaxDimension) {
    throw DomainError("--dim must lie in [2, 64]");
  }
  const std::size_t s = 0;
  const std::size_t t = config.dimension - 1;
  const auto u = config.eps0 ? oracle::embedded_rotation(config.dimension, s, t, *config.eps0)
                             : oracle::random_unitary(config.dimension, config.seed);
  const auto single = oracle::verify_deviation(u, theta, s, t);
  const auto recursive = oracle::recursive_orbit_check(u, theta, s, t, config.levels);

  VerifyOutcome outcome;
  outcome.passed = single.discrepancy < oracle::kStepTolerance &&
                   recursive.max_discrepancy < oracle::kRecursionTolerance &&
                   recursive.query_counts_match;
  Report& report = outcome.report;
  report.command = "verify";
  report.summary = {
      {"theta", theta.theta()},
      {"theta_label", phase_label(theta)},
      {"dimension", config.dimension},
      {"unitary", config.eps0 ? "embedded rotation" : "haar random"},
      {"seed", config.seed},
      {"epsilon", single.epsilon},
      {"measured_deviation", single.measured_deviation},
      {"predicted_deviation", single.predicted_deviation},
      {"discrepancy", single.discrepancy},
      {"levels", config.levels},
      {"max_level_discrepancy", recursive.max_discrepancy},
      {"query_counts_match", recursive.query_counts_match},
      {"passed", outcome.passed},
  };
  report.columns = {"level", "matrix_eps", "recursive_eps", "scalar_eps", "discrepancy",
                    "unitarity_defect", "oracle_calls", "expected_queries"};
  for (const auto& level : recursive.levels) {
    report.rows.push_back({static_cast<std::int64_t>(level.level), level.matrix_epsilon,
                           level.recursive_epsilon, level.scalar_epsilon, level.discrepancy,
                           level.unitarity_defect, static_cast<std::int64_t>(level.oracle_calls),
                           static_cast<std::int64_t>(level.expected_queries)});
  }
  return outcome;
}

Report sweep_report(const RunConfig& config) {
  if (config.theta_grid.empty()) throw UsageError("--thetas grid is empty");
  std::vector<PhaseShift> grid;
  for (const auto& token : config.theta_grid) grid.push_back(parse_phase(token));
  std::stable_sort(grid.begin(), grid.end(),
                   [](const PhaseShift& x, const PhaseShift& y) { return x.theta() < y.theta(); });
  const double eps0 = require_start(config).failure.epsilon();
  const auto options = orbit_options(config);

  std::vector<std::future<dynamics::Orbit>> pending;
  pending.reserve(grid.size());
  for (const auto& theta : grid) {
    pending.push_back(std::async(std::launch::async, [theta, eps0, &config, options] {
      return dynamics::orbit(theta, eps0, config.steps, options);
    }));
  }

  Report report;
  report.command = "sweep";
  nlohmann::json labels = nlohmann::json::array();
  report.columns = {"theta", "m", "eps_m"};
  for (auto& future : pending) {
    const auto orbit = future.get();
    labels.push_back(phase_label(orbit.theta));
    add_orbit_rows(report, orbit);
    report.series.push_back({"theta=" + phase_label(orbit.theta), orbit.epsilons});
  }
  report.summary = {{"eps0", eps0},
                    {"steps", config.steps},
                    {"thetas", labels},
                    {"arithmetic", config.paper_precision ? "5 significant digits" : "binary64"}};
  report.chart_title = "Phase-theta orbits from eps0=" + format_number(eps0, {6});
  return report;
}

void emit(const Report& report, const RunConfig& config, std::ostream& out) {
  FormatOptions options;
  if (config.paper_precision) options.significant_digits = kPaperDigits;
  switch (config.format) {
    case OutputFormat::Table: write_table(report, out, options); break;
    case OutputFormat::Csv: write_csv(report, out, options); break;
    case OutputFormat::Json: write_json(report, out, options); break;
    case OutputFormat::Svg:
      if (report.series.empty()) {
        throw UsageError(std::string("--format svg is not available for ") + command_name(config.command));
      }
      write_svg(report, out);
      break;
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Report report;
    int status = exit_code::kSuccess;
    std::string diagnostic;
    switch (config.command) {
      case Command::Orbit: report = orbit_report(config); break;
      case Command::Constants: report = constants_report(config); break;
      case Command::Compare: report = compare_report(config); break;
      case Command::Plan: report = plan_report(config); break;
      case Command::Sweep: report = sweep_report(config); break;
      case Command::Classify: {
        auto outcome = classify_report(config);
        report = std::move(outcome.report);
        if (outcome.undetermined) {
          status = exit_code::kNonConvergence;
          diagnostic = "limit undetermined after " + std::to_string(config.max_iter) + " iterations";
        }
        break;
      }
      case Command::Verify: {
        auto outcome = verify_report(config);
        report = std::move(outcome.report);
        if (!outcome.passed) {
          status = exit_code::kVerificationFailed;
          diagnostic = "state-vector check exceeded its tolerance";
        }
        break;
      }
    }

    if (config.output_path) {
      std::ostringstream buffer;
      emit(report, config, buffer);
      std::ofstream file(*config.output_path, std::ios::binary);
      if (!file) throw UsageError("cannot open output file " + *config.output_path);
      file << buffer.str();
    } else {
      emit(report, config, out);
    }
    if (!diagnostic.empty()) err << command_name(config.command) << ": " << diagnostic << '\n';
    return status;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return exit_code::kDomain;
  } catch (const NonConvergenceError& e) {
    err << "no convergence: " << e.what() << '\n';
    return exit_code::kNonConvergence;
  }
}

}  // namespace phaselab::cli
