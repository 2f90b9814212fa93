#pragma once

#include <stdexcept>
#include <string>

namespace phaselab {

/// Input outside the mathematical domain of an operation (bad angle,
/// failure probability outside [0,1], invalid tolerance, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// An iteration exhausted its step budget without reaching its target.
class NonConvergenceError : public std::runtime_error {
 public:
  explicit NonConvergenceError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace phaselab
