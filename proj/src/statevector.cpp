#include "phaselab/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <string>

#include "phaselab/errors.hpp"
#include "phaselab/phase_dynamics.hpp"
#include "phaselab/planner.hpp"

namespace phaselab::oracle {
namespace {

using Complex = std::complex<double>;

void require_dimension(std::size_t dimension) {
  if (dimension < 2 || dimension > kMaxDimension) {
    throw DomainError("dimension must lie in [2, " + std::to_string(kMaxDimension) + "]; got " +
                      std::to_string(dimension));
  }
}

void require_index(std::size_t index, std::size_t dimension, const char* name) {
  if (index >= dimension) {
    throw DomainError(std::string(name) + " index " + std::to_string(index) +
                      " out of range for dimension " + std::to_string(dimension));
  }
}

Complex phase_factor(const PhaseShift& theta) { return {theta.cosine(), theta.sine()}; }

double defect_of(const ComplexMatrix& m) {
  const auto n = m.rows();
  return (m * m.adjoint() - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

// Applies U_level (or its adjoint) to a vector by literally unfolding the
// recursion, counting target-oracle and base-unitary invocations.
class RecursiveApplier {
 public:
  RecursiveApplier(const ComplexMatrix& base, Complex phase, std::size_t s, std::size_t t)
      : base_(base), base_adjoint_(base.adjoint()), phase_(phase), s_(s), t_(t) {}

  ComplexVector apply(unsigned level, bool adjoint, ComplexVector v) {
    if (level == 0) {
      ++base_calls;
      return adjoint ? ComplexVector(base_adjoint_ * v) : ComplexVector(base_ * v);
    }
    if (!adjoint) {
      // U_i = U_{i-1} R_s U_{i-1}^dagger R_t U_{i-1}
      v = apply(level - 1, false, std::move(v));
      oracle(v, false);
      v = apply(level - 1, true, std::move(v));
      v(s_) *= phase_;
      return apply(level - 1, false, std::move(v));
    }
    // U_i^dagger = U_{i-1}^dagger R_t^dagger U_{i-1} R_s^dagger U_{i-1}^dagger
    v = apply(level - 1, true, std::move(v));
    v(s_) *= std::conj(phase_);
    v = apply(level - 1, false, std::move(v));
    oracle(v, true);
    return apply(level - 1, true, std::move(v));
  }

  std::uint64_t oracle_calls = 0;
  std::uint64_t base_calls = 0;

 private:
  void oracle(ComplexVector& v, bool adjoint) {
    ++oracle_calls;
    v(t_) *= adjoint ? std::conj(phase_) : phase_;
  }

  const ComplexMatrix& base_;
  ComplexMatrix base_adjoint_;
  Complex phase_;
  std::size_t s_;
  std::size_t t_;
};

}  // namespace

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DomainError("state vector must not be empty");
  const double norm = amplitudes_.squaredNorm();
  if (std::abs(norm - 1.0) > kConstructionTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "state vector is not normalised: sum |amplitude|^2 = " << norm;
    throw DomainError(msg.str());
  }
}

StateVector StateVector::basis(std::size_t dimension, std::size_t index) {
  if (dimension == 0) throw DomainError("state vector must not be empty");
  require_index(index, dimension, "basis");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dimension));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

double StateVector::probability(std::size_t index) const {
  require_index(index, dimension(), "basis");
  return std::norm(amplitudes_(static_cast<Eigen::Index>(index)));
}

UnitaryOperator::UnitaryOperator(ComplexMatrix entries, double tolerance)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw DomainError("unitary operator must be square");
  require_dimension(static_cast<std::size_t>(entries_.rows()));
  const double defect = defect_of(entries_);
  if (!(defect <= tolerance)) {
    std::ostringstream msg;
    msg << "matrix is not unitary: max |U U^dagger - I| = " << defect;
    throw DomainError(msg.str());
  }
}

UnitaryOperator UnitaryOperator::adjoint() const {
  return UnitaryOperator(ComplexMatrix(entries_.adjoint()), Unchecked{});
}

StateVector UnitaryOperator::apply(const StateVector& state) const {
  if (state.dimension() != dimension()) throw DomainError("state and operator dimensions differ");
  return StateVector(entries_ * state.amplitudes());
}

double UnitaryOperator::unitarity_defect() const { return defect_of(entries_); }

UnitaryOperator operator*(const UnitaryOperator& lhs, const UnitaryOperator& rhs) {
  if (lhs.dimension() != rhs.dimension()) throw DomainError("operator dimensions differ");
  return UnitaryOperator(ComplexMatrix(lhs.entries_ * rhs.entries_), UnitaryOperator::Unchecked{});
}

UnitaryOperator random_unitary(std::size_t dimension, std::uint64_t seed) {
  require_dimension(dimension);
  const auto n = static_cast<Eigen::Index>(dimension);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix gaussian(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      gaussian(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }

  Eigen::HouseholderQR<ComplexMatrix> qr(gaussian);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex diag = r(j, j);
    const double magnitude = std::abs(diag);
    if (magnitude > 0.0) q.col(j) *= diag / magnitude;
  }
  return UnitaryOperator(std::move(q), kConstructionTolerance);
}

UnitaryOperator embedded_rotation(std::size_t dimension, std::size_t s, std::size_t t,
                                  double eps0) {
  require_dimension(dimension);
  require_index(s, dimension, "start");
  require_index(t, dimension, "target");
  if (s == t) throw DomainError("start and target must be distinct basis states");
  if (!(eps0 >= 0.0 && eps0 <= 1.0)) throw DomainError("eps0 must lie in [0, 1]");

  const auto n = static_cast<Eigen::Index>(dimension);
  const auto si = static_cast<Eigen::Index>(s);
  const auto ti = static_cast<Eigen::Index>(t);
  const double stay = std::sqrt(eps0);
  const double reach = std::sqrt(1.0 - eps0);
  ComplexMatrix u = ComplexMatrix::Identity(n, n);
  u(si, si) = stay;
  u(ti, si) = reach;
  u(si, ti) = -reach;
  u(ti, ti) = stay;
  return UnitaryOperator(std::move(u), kConstructionTolerance);
}

UnitaryOperator selective_phase(std::size_t dimension, std::size_t index, const PhaseShift& theta) {
  require_dimension(dimension);
  require_index(index, dimension, "phase");
  const auto n = static_cast<Eigen::Index>(dimension);
  ComplexMatrix m = ComplexMatrix::Identity(n, n);
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = phase_factor(theta);
  return UnitaryOperator(std::move(m), kConstructionTolerance);
}

UnitaryOperator fixed_point_step(const UnitaryOperator& u, const PhaseShift& theta,
                                 std::size_t s, std::size_t t) {
  const std::size_t n = u.dimension();
  require_index(s, n, "start");
  require_index(t, n, "target");
  const auto r_s = selective_phase(n, s, theta);
  const auto r_t = selective_phase(n, t, theta);
  return u * r_s * u.adjoint() * r_t * u;
}

double failure_probability(const UnitaryOperator& u, std::size_t s, std::size_t t) {
  require_index(s, u.dimension(), "start");
  require_index(t, u.dimension(), "target");
  const double reach = std::norm(u.entries()(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)));
  return std::clamp(1.0 - reach, 0.0, 1.0);
}

DeviationCheck verify_deviation(const UnitaryOperator& u, const PhaseShift& theta,
                                std::size_t s, std::size_t t) {
  const double eps = failure_probability(u, s, t);
  const double measured = failure_probability(fixed_point_step(u, theta, s, t), s, t);
  const double predicted = dynamics::iterate_once(theta, eps);
  return {u.dimension(), theta, eps, measured, predicted, std::abs(measured - predicted)};
}

DeviationCheck verify_deviation(std::size_t dimension, std::uint64_t seed, const PhaseShift& theta) {
  return verify_deviation(random_unitary(dimension, seed), theta, 0, dimension - 1);
}

RecursiveCheck recursive_orbit_check(const UnitaryOperator& u, const PhaseShift& theta,
                                     std::size_t s, std::size_t t, unsigned levels) {
  if (levels > kMaxRecursionLevels) {
    throw DomainError("recursion depth " + std::to_string(levels) + " exceeds " +
                      std::to_string(kMaxRecursionLevels) + " levels");
  }
  const std::size_t n = u.dimension();
  require_index(s, n, "start");
  require_index(t, n, "target");

  const double eps0 = failure_probability(u, s, t);
  const auto scalar = dynamics::orbit(theta, eps0, levels);

  RecursiveCheck out{n, theta, {}, 0.0, true};
  UnitaryOperator current = u;
  for (unsigned level = 0; level <= levels; ++level) {
    if (level > 0) current = fixed_point_step(current, theta, s, t);

    RecursiveApplier applier(u.entries(), phase_factor(theta), s, t);
    const ComplexVector start = StateVector::basis(n, s).amplitudes();
    const ComplexVector image = applier.apply(level, false, start);
    const double recursive_eps =
        std::clamp(1.0 - std::norm(image(static_cast<Eigen::Index>(t))), 0.0, 1.0);

    LevelCheck check{};
    check.level = level;
    check.matrix_epsilon = failure_probability(current, s, t);
    check.recursive_epsilon = recursive_eps;
    check.scalar_epsilon = scalar.epsilons[level];
    check.discrepancy = std::max(std::abs(check.matrix_epsilon - check.scalar_epsilon),
                                 std::abs(check.recursive_epsilon - check.scalar_epsilon));
    check.unitarity_defect = current.unitarity_defect();
    check.oracle_calls = applier.oracle_calls;
    check.base_unitary_calls = applier.base_calls;
    check.expected_queries = planner::query_count(level);

    out.max_discrepancy = std::max(out.max_discrepancy, check.discrepancy);
    if (check.oracle_calls != check.expected_queries) out.query_counts_match = false;
    out.levels.push_back(check);
  }
  return out;
}

RecursiveCheck recursive_orbit_check(std::size_t dimension, std::uint64_t seed,
                                     const PhaseShift& theta, unsigned levels) {
  return recursive_orbit_check(random_unitary(dimension, seed), theta, 0, dimension - 1, levels);
}

}  // namespace phaselab::oracle
