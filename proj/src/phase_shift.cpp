#include "phaselab/phase_shift.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <utility>

#include "phaselab/errors.hpp"

namespace phaselab {
namespace {

struct NamedEntry {
  NamedAngle angle;
  const char* token;
  double theta;
  double one_minus_cos;
};

const std::array<NamedEntry, 5>& named_table() {
  static const std::array<NamedEntry, 5> table{{
      {NamedAngle::PiOver3, "pi/3", std::numbers::pi / 3, 0.5},
      {NamedAngle::PiOver2, "pi/2", std::numbers::pi / 2, 1.0},
      {NamedAngle::AcosMinusQuarter, "acos(-1/4)", kAcosMinusQuarter, 1.25},
      {NamedAngle::TwoPiOver3, "2pi/3", 2 * std::numbers::pi / 3, 1.5},
      {NamedAngle::Pi, "pi", std::numbers::pi, 2.0},
  }};
  return table;
}

[[noreturn]] void reject_theta(double theta) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "phase shift theta must lie in (0, pi] with theta >= 1e-9"
      << " (theta = 0 leaves d and a undefined); got " << theta;
  throw DomainError(msg.str());
}

}  // namespace

PhaseShift::PhaseShift(double theta) {
  if (!std::isfinite(theta) || theta < kMinTheta || theta > std::numbers::pi) {
    reject_theta(theta);
  }
  theta_ = theta;
  for (const auto& entry : named_table()) {
    if (entry.theta == theta) {
      one_minus_cos_ = entry.one_minus_cos;
      return;
    }
  }
  const double half_sine = std::sin(theta / 2);
  one_minus_cos_ = 2 * half_sine * half_sine;
}

PhaseShift PhaseShift::named(NamedAngle angle) {
  for (const auto& entry : named_table()) {
    if (entry.angle == angle) return PhaseShift(entry.theta, entry.one_minus_cos);
  }
  throw DomainError("unknown named angle");
}

PhaseShift PhaseShift::from_cosine(double cosine) {
  if (!std::isfinite(cosine) || cosine < -1.0 || cosine > 1.0) {
    throw DomainError("cosine of a phase shift must lie in [-1, 1]");
  }
  const double theta = std::acos(cosine);
  if (theta < kMinTheta) reject_theta(theta);
  return PhaseShift(theta, 1.0 - cosine);
}

PhaseShift make_phase(double theta) { return PhaseShift(theta); }

PhaseShift parse_phase(std::string_view token) {
  for (const auto& entry : named_table()) {
    if (token == entry.token) return PhaseShift::named(entry.angle);
  }
  double value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc() || ptr != last) {
    throw DomainError("malformed phase token '" + std::string(token) +
                      "'; expected radians or one of pi/3, pi/2, "
                      "acos(-1/4), 2pi/3, pi");
  }
  return PhaseShift(value);
}

std::string phase_label(const PhaseShift& phase) {
  for (const auto& entry : named_table()) {
    if (entry.theta == phase.theta() &&
        entry.one_minus_cos == phase.one_minus_cos()) {
      return entry.token;
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", phase.theta());
  return buf;
}

}  // namespace phaselab
