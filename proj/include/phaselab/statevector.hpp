#pragma once

// Dense state-vector cross-check of the scalar dynamics.
//
// Builds explicit unitaries, composes V = U R_s U^dagger R_t U with
// R_x = I - (1 - e^{i theta}) |x><x|, and compares 1 - |<t|V|s>|^2 with
// the scalar map. The failure probability is read off the simulated U, so
// the two routes share nothing except theta.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "phaselab/phase_shift.hpp"

namespace phaselab::oracle {

/// Verifier, not a simulator: dense matrices up to this dimension.
inline constexpr std::size_t kMaxDimension = 64;
inline constexpr unsigned kMaxRecursionLevels = 10;

inline constexpr double kConstructionTolerance = 1e-12;
inline constexpr double kStepTolerance = 1e-10;
inline constexpr double kRecursionTolerance = 1e-9;

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Normalised amplitudes.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);
  static StateVector basis(std::size_t dimension, std::size_t index);

  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  double probability(std::size_t index) const;

 private:
  ComplexVector amplitudes_;
};

/// Square matrix with U U^dagger = I to `tolerance` entrywise.
class UnitaryOperator {
 public:
  explicit UnitaryOperator(ComplexMatrix entries, double tolerance = kStepTolerance);

  const ComplexMatrix& entries() const noexcept { return entries_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  UnitaryOperator adjoint() const;
  StateVector apply(const StateVector& state) const;

  /// max |(U U^dagger - I)_ij|
  double unitarity_defect() const;

  friend UnitaryOperator operator*(const UnitaryOperator& lhs, const UnitaryOperator& rhs);

 private:
  struct Unchecked {};
  UnitaryOperator(ComplexMatrix entries, Unchecked) : entries_(std::move(entries)) {}
  ComplexMatrix entries_;
};

/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of
/// diag(R) folded back into Q. Deterministic per (dimension, seed).
UnitaryOperator random_unitary(std::size_t dimension, std::uint64_t seed);

/// Identity except for a real rotation in the (s, t) plane with
/// <t|U|s> = sqrt(1 - eps0), so that 1 - |U_ts|^2 = eps0. Only |U_ts|
/// matters for the deviation; the phase of U_ts is irrelevant.
UnitaryOperator embedded_rotation(std::size_t dimension, std::size_t s, std::size_t t,
                                  double eps0);

/// Diagonal phase gate: identity except entry (index, index) = e^{i theta}.
UnitaryOperator selective_phase(std::size_t dimension, std::size_t index,
                                const PhaseShift& theta);

/// U R_s U^dagger R_t U.
UnitaryOperator fixed_point_step(const UnitaryOperator& u, const PhaseShift& theta,
                                 std::size_t s, std::size_t t);

/// 1 - |<t|U|s>|^2
double failure_probability(const UnitaryOperator& u, std::size_t s, std::size_t t);

struct DeviationCheck {
  std::size_t dimension;
  PhaseShift theta;
  double epsilon;              ///< 1 - |U_ts|^2 of the input unitary
  double measured_deviation;   ///< 1 - |<t|V|s>|^2
  double predicted_deviation;  ///< scalar map at epsilon
  double discrepancy;
};

/// Default basis choice of the verifier: s = 0, t = dimension - 1.
DeviationCheck verify_deviation(std::size_t dimension, std::uint64_t seed, const PhaseShift& theta);
DeviationCheck verify_deviation(const UnitaryOperator& u, const PhaseShift& theta,
                                std::size_t s, std::size_t t);

struct LevelCheck {
  unsigned level;
  double matrix_epsilon;     ///< from the composed matrix U_i
  double recursive_epsilon;  ///< from applying the recursion to |s>
  double scalar_epsilon;     ///< scalar orbit
  double discrepancy;        ///< max of both routes against the scalar orbit
  double unitarity_defect;   ///< of U_i
  std::uint64_t oracle_calls;      ///< R_t applications while applying U_i to |s>
  std::uint64_t base_unitary_calls;
  std::uint64_t expected_queries;  ///< (3^i - 1)/2
};

struct RecursiveCheck {
  std::size_t dimension;
  PhaseShift theta;
  std::vector<LevelCheck> levels;  ///< levels 0..L
  double max_discrepancy;
  bool query_counts_match;
};

/// Builds U_i = U_{i-1} R_s U_{i-1}^dagger R_t U_{i-1} for i = 1..levels and
/// compares each level with the scalar orbit started at 1 - |U_ts|^2.
RecursiveCheck recursive_orbit_check(std::size_t dimension, std::uint64_t seed,
                                     const PhaseShift& theta, unsigned levels);
RecursiveCheck recursive_orbit_check(const UnitaryOperator& u, const PhaseShift& theta,
                                     std::size_t s, std::size_t t, unsigned levels);

}  // namespace phaselab::oracle
