#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ctl/circuit.hpp"

namespace ctl {

enum class ResonanceKind {
  DegenerateHopping,            // omega~_j = upsilon~_j, no tone needed
  RamanLtoR,                    // tone at omega~ - upsilon~ (left above right)
  RamanRtoL,                    // tone at upsilon~ - omega~
  TwoModeSqueeze,               // counter-propagating pair, tone at omega~ + upsilon~
  SingleModeSqueezeL,           // tone at 2*omega~
  SingleModeSqueezeR,           // tone at 2*upsilon~
  GeneralLinearDegenerate,      // degenerate pair plus a tone at omega~ + upsilon~
  PositionPositionNondegenerate  // tones at both |omega~ - upsilon~| and omega~ + upsilon~
};

const char* to_string(ResonanceKind kind);

struct ResonanceSpec {
  ResonanceKind kind;
  ModeIndex mode_left;   // equals mode_right for single-mode kinds
  ModeIndex mode_right;
  // Tone satisfying the matching condition; empty for DegenerateHopping.
  // For PositionPositionNondegenerate this is the squeeze-frequency tone.
  std::optional<int> drive_tone_index;
  double detuning = 0.0;  // rad/s, signed worst residual of the condition
};

// 1e-6 of the larger frequency in the condition.
double default_resonance_tol(double freq_a, double freq_b);

struct CrSolveResult {
  double c_r = 0.0;        // F
  double residual = 0.0;   // |upsilon~_j(c_r) - omega~_j| / omega~_j
  int iterations = 0;      // bisection plus Newton steps
};

// Right-line capacitance making upsilon~_j(C_r) = omega~_j at fixed L_r.
// upsilon~ scales as C^(-1/2), so the root is unique; bisection brackets it
// and a Newton polish takes the relative residual below 1e-12. Throws
// NoRootInBracket when the bracket does not straddle the target.
CrSolveResult solve_cr_for_degeneracy_report(
    int j, const CircuitParams& p,
    std::pair<double, double> bracket = {1e-15, 1e-9});

double solve_cr_for_degeneracy(int j, const CircuitParams& p,
                               std::pair<double, double> bracket = {1e-15,
                                                                    1e-9});

// Tone frequency omega~_{j_left} - upsilon~_{j_right} converting between the
// pair; negative means the mirrored condition (right above left).
double raman_drive(int j_left, int j_right, const CircuitParams& p);

// Tone frequency omega~_{j_left} + upsilon~_{j_right} for pair generation.
double squeeze_drive(int j_left, int j_right, const CircuitParams& p);

// Scans every left-right pair in mode_set (and every single mode) against
// the drive tones and emits all conditions met within tol. Hopping and Raman
// require equal signed mode numbers, two-mode squeezing opposite ones;
// compound kinds and single-mode squeezing are frequency-only. Emission
// order is deterministic: pair loops in mode_set order with kinds in enum
// order, tones in drive order, then the single-mode scan.
std::vector<ResonanceSpec> classify_resonances(
    const DriveSpec& drive, const CircuitParams& p,
    const std::vector<ModeIndex>& mode_set,
    std::optional<double> tol = std::nullopt);

}  // namespace ctl
