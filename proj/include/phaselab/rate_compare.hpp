#pragma once

// Phase-theta against Phase-pi/3 from a common starting failure
// probability. With t = (1 - 2cos)/(3 - 2cos) the one-step difference
// factors as
//
//   f_theta(x) - y^3 = x (2cos - 1)(1 - x)(3 - 2cos)(x - t) + x^3 - y^3,
//
// so for theta > pi/3 the larger phase is ahead while x stays above t.

#include <cstddef>
#include <optional>
#include <vector>

#include "phaselab/phase_shift.hpp"

namespace phaselab::rates {

/// (1 - 2cos theta)/(3 - 2cos theta). Defined for pi/3 < theta <= pi only.
double crossover_epsilon(const PhaseShift& theta);

/// Right-hand side of the factored difference with x = eps_{m-1}(theta) and
/// y = eps_{m-1}(pi/3).
double factored_difference(const PhaseShift& theta, double x, double y);

struct ComparisonTrace {
  PhaseShift theta;
  double eps0;
  std::size_t steps;
  std::vector<double> eps_theta;
  std::vector<double> eps_pi3;
  std::vector<double> deltas;  ///< eps_theta[i] - eps_pi3[i]
  std::optional<double> threshold;
  /// Least m >= 1 with eps_{m-1}(theta) <= threshold (a tie counts as below).
  std::optional<std::size_t> crossover_step;
  /// Ordering guaranteed by the case analysis holds on this trace: deltas
  /// non-positive before the crossover for theta > pi/3, non-negative
  /// everywhere for theta < pi/3. Deltas after the crossover are not judged.
  bool ordering_consistent;
};

ComparisonTrace compare(const PhaseShift& theta, double eps0, std::size_t steps);

}  // namespace phaselab::rates
