#include "phaselab/rate_compare.hpp"

#include "phaselab/errors.hpp"
#include "phaselab/phase_dynamics.hpp"

namespace phaselab::rates {

double crossover_epsilon(const PhaseShift& theta) {
  const double k = theta.one_minus_cos();
  if (!(k > 0.5)) throw DomainError("crossover threshold needs pi/3 < theta <= pi");
  return (2 * k - 1) / (2 * k + 1);
}

double factored_difference(const PhaseShift& theta, double x, double y) {
  const double cosine = theta.cosine();
  const double threshold = (1 - 2 * cosine) / (3 - 2 * cosine);
  return x * (2 * cosine - 1) * (1 - x) * (3 - 2 * cosine) * (x - threshold) +
         x * x * x - y * y * y;
}

ComparisonTrace compare(const PhaseShift& theta, double eps0, std::size_t steps) {
  if (!(eps0 > 0.0 && eps0 < 1.0)) {
    throw DomainError("initial failure probability must lie in (0, 1)");
  }
  if (steps < 1) throw DomainError("comparison needs at least one step");

  ComparisonTrace out{theta, eps0, steps, {}, {}, {}, std::nullopt, std::nullopt, true};
  out.eps_theta = dynamics::orbit(theta, eps0, steps).epsilons;

  out.eps_pi3.reserve(steps + 1);
  double y = eps0;
  for (std::size_t i = 0; i <= steps; ++i) {
    out.eps_pi3.push_back(y);
    y = y * y * y;
  }

  out.deltas.reserve(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) out.deltas.push_back(out.eps_theta[i] - out.eps_pi3[i]);

  const double k = theta.one_minus_cos();
  if (k > 0.5) {
    out.threshold = crossover_epsilon(theta);
    for (std::size_t m = 1; m <= steps; ++m) {
      if (out.eps_theta[m - 1] <= *out.threshold) {
        out.crossover_step = m;
        break;
      }
    }
    const std::size_t judged = out.crossover_step.value_or(steps + 1);
    for (std::size_t i = 0; i < judged; ++i) {
      if (out.deltas[i] > 0.0) out.ordering_consistent = false;
    }
  } else if (k < 0.5) {
    for (double delta : out.deltas) {
      if (delta < 0.0) out.ordering_consistent = false;
    }
  }
  return out;
}

}  // namespace phaselab::rates
