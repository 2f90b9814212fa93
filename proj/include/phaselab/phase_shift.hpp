#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

namespace phaselab {

/// Smallest admissible phase. Below this the constants d and a lose all
/// precision because 1 - cos(theta) ~ theta^2 / 2.
inline constexpr double kMinTheta = 1e-9;

/// arccos(-1/4), the boundary between the >80% and the 66%-80% regimes.
inline const double kAcosMinusQuarter = std::acos(-0.25);

/// Angles with an exactly known cosine. Building a PhaseShift from one of
/// these keeps regime boundaries and closed forms exact.
enum class NamedAngle { PiOver3, PiOver2, AcosMinusQuarter, TwoPiOver3, Pi };

/// Validated equal phase shift theta in (0, pi].
///
/// Besides theta the value carries k = 1 - cos(theta), computed as
/// 2 sin^2(theta/2) so that it stays accurate for small theta. Every
/// closed form in the library is written in terms of k.
class PhaseShift {
 public:
  /// Throws DomainError unless theta is finite and kMinTheta <= theta <= pi.
  /// A theta bit-identical to one of the NamedAngle values picks up the
  /// exact cosine of that angle.
  explicit PhaseShift(double theta);

  static PhaseShift named(NamedAngle angle);

  /// theta = arccos(c). The cosine is stored as given, not recomputed.
  static PhaseShift from_cosine(double cosine);

  double theta() const noexcept { return theta_; }
  double cosine() const noexcept { return 1.0 - one_minus_cos_; }
  double one_minus_cos() const noexcept { return one_minus_cos_; }
  double sine() const noexcept { return std::sin(theta_); }

  friend bool operator==(const PhaseShift&, const PhaseShift&) = default;

 private:
  PhaseShift(double theta, double one_minus_cos) noexcept
      : theta_(theta), one_minus_cos_(one_minus_cos) {}

  double theta_;
  double one_minus_cos_;
};

PhaseShift make_phase(double theta);

/// Parses "pi/3", "pi/2", "2pi/3", "pi", "acos(-1/4)" or a decimal number
/// of radians. Throws DomainError on malformed or out-of-range input.
PhaseShift parse_phase(std::string_view token);

/// Canonical token for named angles, otherwise the radians with 17 digits.
std::string phase_label(const PhaseShift& phase);

}  // namespace phaselab
