#pragma once

#include <numbers>

namespace ctl::constants {

// 2018 CODATA exact values, SI.
inline constexpr double hbar = 1.054571817e-34;                // J s
inline constexpr double elementary_charge = 1.602176634e-19;   // C
inline constexpr double k_boltzmann = 1.380649e-23;            // J / K

// Superconducting flux quantum pi*hbar/e = h/2e.
inline constexpr double flux_quantum =
    std::numbers::pi * hbar / elementary_charge;               // Wb

}  // namespace ctl::constants
