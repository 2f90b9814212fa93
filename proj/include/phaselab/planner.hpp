#pragma once

// Iteration planning for a known starting failure probability.
//
// For eps <= 3/4 a single iteration with cos(theta) = 1 - 1/(2(1 - eps))
// puts eps exactly on the double root d and reaches the target. Larger
// eps is first driven below 3/4 by repeated iterations at a fixed phase.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "phaselab/phase_shift.hpp"

namespace phaselab::planner {

/// The single-shot phase is admissible up to this failure probability.
inline constexpr double kSingleShotLimit = 0.75;

/// Failure probability eps stored together with delta = 1 - eps so that
/// eps = 1 - 1/N keeps its precision for any database size.
class FailureProbability {
 public:
  static FailureProbability from_epsilon(double eps);
  static FailureProbability from_success(double delta);

  double epsilon() const noexcept { return epsilon_; }
  double success() const noexcept { return success_; }

 private:
  FailureProbability(double eps, double delta) noexcept : epsilon_(eps), success_(delta) {}
  double epsilon_;
  double success_;
};

struct SearchProblem {
  FailureProbability failure;
  std::optional<std::uint64_t> database_size;

  /// eps = 1 - 1/N, N >= 2.
  static SearchProblem from_database_size(std::uint64_t n);
  /// eps = 1 - 2^-n, n >= 1; for sizes that do not fit a 64-bit count.
  static SearchProblem from_qubits(unsigned n);
  static SearchProblem from_epsilon(double eps);
};

/// theta = arccos(1 - 1/(2(1 - eps))) for 0 <= eps <= 3/4; the result puts
/// eps on d(theta). Larger eps is a DomainError: use plan_search.
PhaseShift optimal_single_shot_theta(double eps);

/// Least n with eps^(3^n) <= 3/4, via the closed form
/// ceil((ln ln 4/3 - ln ln 1/eps) / ln 3) checked against the cube chain.
unsigned n_star(const FailureProbability& eps);

struct Descent {
  std::size_t iterations;        ///< m*(theta)
  FailureProbability final;      ///< eps_{m*}
};

/// Least m with eps_m <= 3/4 along the Phase-theta orbit, iterated in
/// success-probability form. Throws NonConvergenceError when the orbit
/// stalls above 3/4 or max_iter is exceeded.
Descent m_star_exact(const PhaseShift& theta, const FailureProbability& eps,
                     std::size_t max_iter = 1'000'000);

/// ceil((-2 lg 2 - lg delta) / lg(1 + 4(1 - cos theta))).
///
/// Derived from eps_l ~ 1 - (1 + 4(1 - cos theta))^l delta, which drops the
/// O(delta^2) terms; it tracks m_star_exact to within one iteration once
/// delta is small.
unsigned m_star_approx(const PhaseShift& theta, const FailureProbability& eps);

/// Oracle queries of an i-level recursion, (3^i - 1)/2 (q_i = 3 q_{i-1} + 1).
/// Throws DomainError when the count overflows 64 bits (levels > 40).
std::uint64_t query_count(unsigned levels);

struct Stage {
  PhaseShift theta;
  std::size_t iterations;
  double predicted_epsilon;  ///< failure probability after this stage
};

/// Ordered stages of a search. total_queries counts the stage-2 single shot
/// as one more recursion level on top of the m* levels of stage 1, i.e.
/// query_count(m* + 1); a single-stage plan costs query_count(1) = 1.
struct SearchPlan {
  std::vector<Stage> stages;
  unsigned recursion_depth;
  std::uint64_t total_queries;

  double final_epsilon() const { return stages.back().predicted_epsilon; }
};

SearchPlan plan_search(const SearchProblem& problem, const PhaseShift& theta_first);

}  // namespace phaselab::planner
