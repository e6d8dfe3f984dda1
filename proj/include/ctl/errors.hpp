#pragma once

#include <stdexcept>

namespace ctl {

// Root-finding bracket does not straddle a sign change.
struct NoRootInBracket : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adaptive integrator drove the step size below the representable floor.
struct StiffnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fock truncation error stayed above budget even after enlarging the basis.
struct LeakageExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resonance descriptor does not map to an implemented effective Hamiltonian.
struct UnsupportedResonance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resonance residual exceeds the tolerance the caller allowed.
struct DetuningTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested a feature of an interaction whose strength is zero.
struct NoInteraction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract run configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ctl
