#include "phaselab/planner.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "phaselab/errors.hpp"
#include "phaselab/phase_dynamics.hpp"

namespace phaselab::planner {
namespace {

void require_large_failure(const FailureProbability& eps) {
  const double delta = eps.success();
  if (!(delta > 0.0 && delta < 1.0 - kSingleShotLimit)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "failure probability must lie in (3/4, 1); got " << eps.epsilon()
        << " (1 - eps = " << delta << ")";
    throw DomainError(msg.str());
  }
}

// eps^(3^n) <= 3/4  <=>  3^n ln(1/eps) >= ln(4/3)
bool cube_chain_reaches(double log_inverse_eps, unsigned n) {
  return std::pow(3.0, n) * log_inverse_eps >= std::log(4.0 / 3.0);
}

}  // namespace

FailureProbability FailureProbability::from_epsilon(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("failure probability must lie in [0, 1]");
  return {eps, 1.0 - eps};
}

FailureProbability FailureProbability::from_success(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("success probability must lie in [0, 1]");
  return {1.0 - delta, delta};
}

SearchProblem SearchProblem::from_database_size(std::uint64_t n) {
  if (n < 2) throw DomainError("database size N must be at least 2");
  return {FailureProbability::from_success(1.0 / static_cast<double>(n)), n};
}

SearchProblem SearchProblem::from_qubits(unsigned n) {
  if (n < 1 || n > 1000) throw DomainError("qubit count must lie in [1, 1000]");
  std::optional<std::uint64_t> size;
  if (n < 64) size = std::uint64_t{1} << n;
  return {FailureProbability::from_success(std::ldexp(1.0, -static_cast<int>(n))), size};
}

SearchProblem SearchProblem::from_epsilon(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("failure probability must lie in (0, 1)");
  return {FailureProbability::from_epsilon(eps), std::nullopt};
}

PhaseShift optimal_single_shot_theta(double eps) {
  if (!(eps >= 0.0 && eps <= kSingleShotLimit)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "single-shot phase exists only for 0 <= eps <= 3/4 (got " << eps
        << "); use plan_search to descend below 3/4 first";
    throw DomainError(msg.str());
  }
  const auto theta = PhaseShift::from_cosine(1.0 - 1.0 / (2.0 * (1.0 - eps)));
  if (std::abs(dynamics::map_value(theta, eps)) > 1e-12) {
    throw std::logic_error("single-shot phase does not annihilate the deviation");
  }
  return theta;
}

unsigned n_star(const FailureProbability& eps) {
  require_large_failure(eps);
  const double log_inverse_eps = -std::log1p(-eps.success());
  const double estimate =
      (std::log(std::log(4.0 / 3.0)) - std::log(log_inverse_eps)) / std::log(3.0);
  auto n = static_cast<unsigned>(std::max(1.0, std::ceil(estimate)));
  while (!cube_chain_reaches(log_inverse_eps, n)) ++n;
  while (n > 1 && cube_chain_reaches(log_inverse_eps, n - 1)) --n;
  return n;
}

Descent m_star_exact(const PhaseShift& theta, const FailureProbability& eps,
                     std::size_t max_iter) {
  require_large_failure(eps);
  const double target = 1.0 - kSingleShotLimit;
  double delta = eps.success();
  std::size_t m = 0;
  while (delta < target) {
    if (m == max_iter) {
      throw NonConvergenceError("m* search exceeded " + std::to_string(max_iter) + " iterations");
    }
    const double next = dynamics::iterate_complement(theta, delta);
    if (!(next > delta)) {
      throw NonConvergenceError("orbit stopped descending above 3/4 at step " + std::to_string(m));
    }
    delta = next;
    ++m;
  }
  return {m, FailureProbability::from_success(delta)};
}

unsigned m_star_approx(const PhaseShift& theta, const FailureProbability& eps) {
  require_large_failure(eps);
  const double growth = std::log10(1.0 + 4.0 * theta.one_minus_cos());
  const double value = (-2.0 * std::log10(2.0) - std::log10(eps.success())) / growth;
  return static_cast<unsigned>(std::max(0.0, std::ceil(value)));
}

std::uint64_t query_count(unsigned levels) {
  if (levels > 40) {
    throw DomainError("query count (3^" + std::to_string(levels) +
                      " - 1)/2 overflows a 64-bit count; at most 40 levels");
  }
  std::uint64_t q = 0;
  for (unsigned i = 0; i < levels; ++i) q = 3 * q + 1;
  return q;
}

SearchPlan plan_search(const SearchProblem& problem, const PhaseShift& theta_first) {
  const double eps = problem.failure.epsilon();
  // eps rounds to 1 for database sizes beyond 2^53; the success side is exact.
  if (!(eps > 0.0) || !(problem.failure.success() > 0.0)) {
    throw DomainError("failure probability must lie in (0, 1)");
  }

  SearchPlan plan{};
  if (eps <= kSingleShotLimit) {
    const auto theta = optimal_single_shot_theta(eps);
    plan.stages.push_back({theta, 1, dynamics::iterate_once(theta, eps)});
    plan.recursion_depth = 1;
    plan.total_queries = query_count(1);
    return plan;
  }

  const Descent descent = m_star_exact(theta_first, problem.failure);
  const double reached = descent.final.epsilon();
  plan.stages.push_back({theta_first, descent.iterations, reached});
  const auto finisher = optimal_single_shot_theta(reached);
  plan.stages.push_back({finisher, 1, dynamics::iterate_once(finisher, reached)});
  plan.recursion_depth = static_cast<unsigned>(descent.iterations + 1);
  plan.total_queries = query_count(plan.recursion_depth);
  return plan;
}

}  // namespace phaselab::planner
