#pragma once

// Scalar dynamics of the Phase-theta fixed-point search.
//
// One search iteration maps the failure probability eps to
//
//     f(eps) = 4 (1 - cos theta)^2 eps (eps - d)^2,
//     d      = (1 - 2 cos theta) / (2 (1 - cos theta)).
//
// Writing k = 1 - cos theta the map is evaluated in the expanded form
// eps * (2k eps - (2k - 1))^2, which has no division and therefore no
// singularity as theta -> 0.

#include <cstddef>
#include <optional>
#include <vector>

#include "phaselab/phase_shift.hpp"

namespace phaselab::dynamics {

/// Absolute tolerance deciding "eps equals d" (and equality with a, b, c).
inline constexpr double kHitTolerance = 1e-12;

/// Closed-form landmarks of the map for one theta.
struct PhaseConstants {
  double d;  ///< double root: f(d) = 0
  double a;  ///< interior fixed point cos/(cos - 1)
  double r;  ///< stationary point d/3
  double g;  ///< relative maximum f(r)
  std::optional<double> b;  ///< extra preimages of a, present iff cos <= 0
  std::optional<double> c;
};

PhaseConstants constants(const PhaseShift& theta);

/// f(eps) for eps in [0,1]. Throws DomainError outside that range.
double iterate_once(const PhaseShift& theta, double eps);

/// 1 - f(1 - delta), evaluated without forming 1 - delta. Keeps full
/// relative precision for failure probabilities that round to 1 in double
/// (database sizes beyond 2^53).
double iterate_complement(const PhaseShift& theta, double delta);

/// Closed form of f(eps) - eps:  4 eps k^2 (1 - eps)(a - eps).
double step_delta(const PhaseShift& theta, double eps);

/// f and f' on the whole real line, for analysis.
double map_value(const PhaseShift& theta, double x);
double map_derivative(const PhaseShift& theta, double x);

/// Rounds x to the given number of significant decimal digits.
double round_significant(double x, int digits);

struct OrbitOptions {
  /// When set, every computed iterate is rounded to this many significant
  /// digits before the next step (hand-calculation arithmetic).
  std::optional<int> significant_digits;
  double hit_tolerance = kHitTolerance;
};

struct Orbit {
  PhaseShift theta;
  std::vector<double> epsilons;  ///< eps_0 ... eps_m
  std::optional<std::size_t> hit_d_at;
  /// First index landing on a, b or c; every later iterate equals a.
  std::optional<std::size_t> hit_a_preimage_at;
  std::optional<int> significant_digits;

  std::size_t steps() const noexcept { return epsilons.size() - 1; }
  double back() const noexcept { return epsilons.back(); }
};

/// Runs `steps` iterations from eps0. eps0 must lie in [0,1].
Orbit orbit(const PhaseShift& theta, double eps0, std::size_t steps,
            const OrbitOptions& options = {});

enum class RegimeTag {
  ConvergesToZero,        ///< 0 < theta <= pi/2
  ConvergesToA_Above80,   ///< pi/2 < theta < acos(-1/4)
  ConvergesToA_Exactly80, ///< theta = acos(-1/4)
  ConvergesToA_66to80,    ///< acos(-1/4) < theta <= 2pi/3
  NonConvergent,          ///< 2pi/3 < theta <= pi
};

struct Interval {
  double lower;
  double upper;
  bool lower_closed;
  bool upper_closed;

  bool contains(double x) const noexcept {
    return (lower_closed ? x >= lower : x > lower) &&
           (upper_closed ? x <= upper : x < upper);
  }
};

struct Regime {
  RegimeTag tag;
  /// Range of the limiting success probability over the regime; empty for
  /// NonConvergent.
  std::optional<Interval> success_probability_bound;
  /// 1 for ConvergesToZero, otherwise 1 - a (the oscillation centre for
  /// NonConvergent).
  double success_probability;
};

Regime classify_regime(const PhaseShift& theta);
const char* to_string(RegimeTag tag) noexcept;

enum class LimitVerdict { LimitZero, LimitA, LimitOne, OscillatesAroundA, Undetermined };
const char* to_string(LimitVerdict verdict) noexcept;

struct LimitOptions {
  double tolerance = 1e-9;
  std::size_t max_iter = 1'000'000;
  /// Number of consecutive steps the residual has to stay below tolerance
  /// without growing before a limit is accepted.
  std::size_t settle_steps = 8;
  /// Consecutive sign changes of (eps - a) that establish an oscillation.
  std::size_t min_alternations = 8;
};

struct LimitReport {
  LimitVerdict verdict;
  std::optional<double> limit_value;
  std::size_t iterations_used;
  /// |eps_m - limit| for a limit verdict, the smallest one-sided distance
  /// from a over the alternating window for OscillatesAroundA, and the
  /// distance to the nearest fixed point for Undetermined.
  double residual;
  std::optional<std::size_t> hit_d_at;
  std::optional<std::size_t> hit_a_preimage_at;
};

LimitReport analyze_limit(const PhaseShift& theta, double eps0,
                          const LimitOptions& options = {});

struct BracketReport {
  PhaseShift theta;
  std::vector<double> upper_sequence;  ///< f^(2k)(g), k = 1..k_max
  std::vector<double> lower_sequence;  ///< f^(2k+1)(g), k = 0..k_max
  double alpha_estimate;
  double beta_estimate;
};

/// Even and odd iterates of the relative maximum g. Only defined for
/// acos(-1/4) < theta <= 2pi/3, where they bracket the fixed point a.
BracketReport bracket_sequences(const PhaseShift& theta, std::size_t k_max);

}  // namespace phaselab::dynamics
