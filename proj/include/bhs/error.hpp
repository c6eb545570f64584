#pragma once

#include <stdexcept>
#include <string>

namespace bhs {

// Argument outside the supported domain of a numerical routine.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Invalid scenario / configuration input.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or unsupported file contents.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Boundary-integral system too ill-conditioned to trust (likely a spurious
// resonance of the single-layer representation).
struct IllConditionedError : std::runtime_error {
  IllConditionedError(double kappa, double cond)
      : std::runtime_error("ill-conditioned boundary system at kappa=" + std::to_string(kappa) +
                           " (condition estimate " + std::to_string(cond) +
                           "); possible spurious resonance"),
        kappa(kappa), condition(cond) {}
  double kappa;
  double condition;
};

// Input data violates a method hypothesis (e.g. identically zero far field).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Point evaluation requested too close to the boundary for plain quadrature.
struct NearBoundaryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bhs
