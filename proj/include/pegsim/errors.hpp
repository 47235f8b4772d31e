#pragma once

#include <stdexcept>

namespace pegsim {

// Input violates a documented precondition of a library operation.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed configuration: files, units, quadrature specs, preset labels.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Wrench that cannot be produced by the contact model: lateral load without
// the axial support that friction requires.
struct InconsistentWrenchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pegsim
