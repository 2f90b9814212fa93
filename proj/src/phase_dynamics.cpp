#include "phaselab/phase_dynamics.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "phaselab/errors.hpp"

namespace phaselab::dynamics {
namespace {

// Results may overshoot 1 by rounding (g = 1 exactly at theta = pi).
constexpr double kClampSlack = 4 * DBL_EPSILON;

void require_probability(double eps, const char* what) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " must lie in [0, 1]; got " << eps;
    throw DomainError(msg.str());
  }
}

double clamp_unit(double y) {
  if (y > 1.0) {
    if (y <= 1.0 + kClampSlack) return 1.0;
    std::ostringstream msg;
    msg.precision(17);
    msg << "map left [0, 1] by more than rounding: " << y;
    throw DomainError(msg.str());
  }
  return y;
}

bool near(double x, double target, double tol) { return std::abs(x - target) <= tol; }

bool lands_on_a_preimage(const PhaseConstants& pc, double x, double tol) {
  if (pc.a <= 0.0) return false;
  if (near(x, pc.a, tol)) return true;
  return pc.b && pc.c && (near(x, *pc.b, tol) || near(x, *pc.c, tol));
}

}  // namespace

PhaseConstants constants(const PhaseShift& theta) {
  const double k = theta.one_minus_cos();
  const double m = 2 * k - 1;  // 1 - 2 cos(theta)
  PhaseConstants pc{};
  pc.d = m / (2 * k);
  pc.a = (k - 1) / k;
  pc.r = pc.d / 3;
  pc.g = 2 * m * m * m / (27 * k);
  if (k >= 1.0) {
    // sqrt(-cos (2 - cos)) = sqrt((k - 1)(k + 1))
    const double half_width = std::sqrt((k - 1) * (k + 1)) / (2 * k);
    pc.b = 0.5 - half_width;
    pc.c = 0.5 + half_width;
  }
  return pc;
}

double map_value(const PhaseShift& theta, double x) {
  const double k = theta.one_minus_cos();
  const double root = 2 * k * x - (2 * k - 1);
  return x * root * root;
}

double map_derivative(const PhaseShift& theta, double x) {
  // 12 k^2 (x - d)(x - d/3) with the factors of 2k pulled inside.
  const double k = theta.one_minus_cos();
  const double m = 2 * k - 1;
  return (2 * k * x - m) * (6 * k * x - m);
}

double iterate_once(const PhaseShift& theta, double eps) {
  require_probability(eps, "failure probability");
  return clamp_unit(map_value(theta, eps));
}

double iterate_complement(const PhaseShift& theta, double delta) {
  require_probability(delta, "success probability");
  // 1 - (1 - delta)(1 - 2k delta)^2 expanded in powers of delta.
  const double k = theta.one_minus_cos();
  const double poly = (1 + 4 * k) + delta * (-4 * k * (k + 1) + delta * 4 * k * k);
  return clamp_unit(delta * poly);
}

double step_delta(const PhaseShift& theta, double eps) {
  const double k = theta.one_minus_cos();
  // k * (a - eps) = (k - 1) - k eps
  return 4 * eps * k * (1 - eps) * ((k - 1) - k * eps);
}

double round_significant(double x, int digits) {
  if (digits < 1 || digits > 17) throw DomainError("significant digits must be in [1, 17]");
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

Orbit orbit(const PhaseShift& theta, double eps0, std::size_t steps,
            const OrbitOptions& options) {
  require_probability(eps0, "initial failure probability");
  const PhaseConstants pc = constants(theta);

  Orbit out{theta, {}, std::nullopt, std::nullopt, options.significant_digits};
  out.epsilons.reserve(steps + 1);

  double x = eps0;
  for (std::size_t i = 0;; ++i) {
    out.epsilons.push_back(x);
    if (!out.hit_d_at && near(x, pc.d, options.hit_tolerance)) out.hit_d_at = i;
    if (!out.hit_a_preimage_at && lands_on_a_preimage(pc, x, options.hit_tolerance)) {
      out.hit_a_preimage_at = i;
    }
    if (i == steps) break;
    x = iterate_once(theta, x);
    if (options.significant_digits) x = round_significant(x, *options.significant_digits);
  }
  return out;
}

Regime classify_regime(const PhaseShift& theta) {
  constexpr double kHalfPi = std::numbers::pi / 2;
  constexpr double kTwoThirdsPi = 2 * std::numbers::pi / 3;
  const double t = theta.theta();
  const double success = 1.0 / theta.one_minus_cos();  // 1 - a

  if (t <= kHalfPi) {
    return {RegimeTag::ConvergesToZero, Interval{1.0, 1.0, true, true}, 1.0};
  }
  if (t < kAcosMinusQuarter) {
    return {RegimeTag::ConvergesToA_Above80, Interval{0.8, 1.0, false, false}, success};
  }
  if (t == kAcosMinusQuarter) {
    return {RegimeTag::ConvergesToA_Exactly80, Interval{0.8, 0.8, true, true}, success};
  }
  if (t <= kTwoThirdsPi) {
    return {RegimeTag::ConvergesToA_66to80, Interval{2.0 / 3.0, 0.8, true, false}, success};
  }
  return {RegimeTag::NonConvergent, std::nullopt, success};
}

const char* to_string(RegimeTag tag) noexcept {
  switch (tag) {
    case RegimeTag::ConvergesToZero: return "ConvergesToZero";
    case RegimeTag::ConvergesToA_Above80: return "ConvergesToA_Above80";
    case RegimeTag::ConvergesToA_Exactly80: return "ConvergesToA_Exactly80";
    case RegimeTag::ConvergesToA_66to80: return "ConvergesToA_66to80";
    case RegimeTag::NonConvergent: return "NonConvergent";
  }
  return "?";
}

const char* to_string(LimitVerdict verdict) noexcept {
  switch (verdict) {
    case LimitVerdict::LimitZero: return "LimitZero";
    case LimitVerdict::LimitA: return "LimitA";
    case LimitVerdict::LimitOne: return "LimitOne";
    case LimitVerdict::OscillatesAroundA: return "OscillatesAroundA";
    case LimitVerdict::Undetermined: return "Undetermined";
  }
  return "?";
}

LimitReport analyze_limit(const PhaseShift& theta, double eps0, const LimitOptions& options) {
  if (!(eps0 > 0.0 && eps0 < 1.0)) {
    throw DomainError("initial failure probability must lie in (0, 1)");
  }
  if (!(options.tolerance > 0.0) || !std::isfinite(options.tolerance)) {
    throw DomainError("convergence tolerance must be positive and finite");
  }
  if (options.max_iter < 1) throw DomainError("max_iter must be at least 1");
  if (options.settle_steps < 1) throw DomainError("settle_steps must be at least 1");

  const PhaseConstants pc = constants(theta);
  const double tol = options.tolerance;
  const bool interior_a = pc.a > 0.0;
  // a repels when |f'(a)| > 1; an alternating orbit then cannot settle on it.
  const bool a_repels = interior_a && std::abs(map_derivative(theta, pc.a)) > 1.0;

  struct Candidate {
    LimitVerdict verdict;
    double value;
    std::size_t settled = 0;
    double last_residual = std::numeric_limits<double>::infinity();
  };
  std::array<Candidate, 3> candidates{{{LimitVerdict::LimitZero, 0.0},
                                       {LimitVerdict::LimitA, pc.a},
                                       {LimitVerdict::LimitOne, 1.0}}};
  const std::size_t candidate_count = interior_a ? 3 : 2;
  if (!interior_a) candidates[1] = candidates[2];

  LimitReport report{LimitVerdict::Undetermined, std::nullopt, 0, 0.0, std::nullopt, std::nullopt};
  if (near(eps0, pc.d, kHitTolerance)) report.hit_d_at = 0;
  if (lands_on_a_preimage(pc, eps0, kHitTolerance)) report.hit_a_preimage_at = 0;

  std::size_t alternations = 0;
  int previous_side = 0;
  double run_min_gap = std::numeric_limits<double>::infinity();

  double x = eps0;
  for (std::size_t i = 1; i <= options.max_iter; ++i) {
    x = iterate_once(theta, x);
    report.iterations_used = i;
    if (!report.hit_d_at && near(x, pc.d, kHitTolerance)) report.hit_d_at = i;
    if (!report.hit_a_preimage_at && lands_on_a_preimage(pc, x, kHitTolerance)) {
      report.hit_a_preimage_at = i;
    }

    for (std::size_t c = 0; c < candidate_count; ++c) {
      Candidate& cand = candidates[c];
      const double residual = std::abs(x - cand.value);
      if (residual < tol) {
        const bool shrinking = residual <= std::max(cand.last_residual, kClampSlack);
        cand.settled = (cand.settled > 0 && shrinking) ? cand.settled + 1 : 1;
      } else {
        cand.settled = 0;
      }
      cand.last_residual = residual;
      if (cand.settled >= options.settle_steps) {
        report.verdict = cand.verdict;
        report.limit_value = cand.value;
        report.residual = residual;
        return report;
      }
    }

    if (interior_a) {
      const int side = x > pc.a ? 1 : (x < pc.a ? -1 : 0);
      if (side != 0 && previous_side != 0 && side != previous_side) {
        ++alternations;
        run_min_gap = std::min(run_min_gap, std::abs(x - pc.a));
      } else {
        alternations = 0;
        run_min_gap = std::abs(x - pc.a);
      }
      previous_side = side;
      if (a_repels && alternations >= options.min_alternations && run_min_gap >= tol) {
        report.verdict = LimitVerdict::OscillatesAroundA;
        report.limit_value = pc.a;
        report.residual = run_min_gap;
        return report;
      }
    }
  }

  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < candidate_count; ++c) {
    nearest = std::min(nearest, std::abs(x - candidates[c].value));
  }
  report.residual = nearest;
  return report;
}

BracketReport bracket_sequences(const PhaseShift& theta, std::size_t k_max) {
  const double t = theta.theta();
  if (!(t > kAcosMinusQuarter && t <= 2 * std::numbers::pi / 3)) {
    throw DomainError("bracket sequences need acos(-1/4) < theta <= 2pi/3");
  }
  if (k_max < 1) throw DomainError("k_max must be at least 1");

  BracketReport out{theta, {}, {}, 0.0, 0.0};
  out.upper_sequence.reserve(k_max);
  out.lower_sequence.reserve(k_max + 1);

  double x = constants(theta).g;
  for (std::size_t j = 1; j <= 2 * k_max + 1; ++j) {
    x = map_value(theta, x);
    (j % 2 == 0 ? out.upper_sequence : out.lower_sequence).push_back(x);
  }
  out.alpha_estimate = out.upper_sequence.back();
  out.beta_estimate = out.lower_sequence.back();
  return out;
}

}  // namespace phaselab::dynamics
