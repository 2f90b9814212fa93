#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace phaselab::cli {

enum class Command { Orbit, Classify, Constants, Compare, Plan, Verify, Sweep };
enum class OutputFormat { Table, Csv, Json, Svg };

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kDomain = 3;
inline constexpr int kNonConvergence = 4;
}  // namespace exit_code

/// Bad flags, unknown command, malformed tokens or conflicting inputs.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr const char* kMaxIterEnv = "PHASE_LAB_MAX_ITER";

struct RunConfig {
  Command command = Command::Orbit;
  std::optional<std::string> theta;       ///< token or radians
  std::vector<std::string> theta_grid;    ///< sweep only
  std::optional<std::string> theta_first; ///< plan only
  std::optional<double> eps0;
  std::optional<std::uint64_t> database_size;
  std::optional<unsigned> qubits;
  std::size_t steps = 10;
  double tol = 1e-9;
  std::size_t max_iter = 1'000'000;
  std::uint64_t seed = 0;
  std::size_t dimension = 8;
  unsigned levels = 0;
  OutputFormat format = OutputFormat::Table;
  bool paper_precision = false;
  std::optional<std::string> output_path;
};

/// Parses argv (argv[0] is the program name). Throws UsageError.
/// `max_iter_env` is the value of PHASE_LAB_MAX_ITER, if set; an explicit
/// --max-iter wins over it.
RunConfig parse_command_line(int argc, const char* const* argv,
                             const std::optional<std::string>& max_iter_env = std::nullopt);

/// Executes a validated configuration and writes the report to `out`
/// (or to config.output_path). Diagnostics go to `err` as one line.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse + run with exit-code mapping; what main() calls.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace phaselab::cli
