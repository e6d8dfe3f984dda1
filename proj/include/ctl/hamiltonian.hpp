#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ctl/circuit.hpp"
#include "ctl/matching.hpp"

namespace ctl {

// Left-line mode operators inherit a commutator [a_j, a_j+] = 1/(4 sin^2)
// from the energy normalization; Raw keeps them, Canonical rescales every
// left operator by 2|sin(pi j/N)| so all commutators are 1. Use Raw when
// comparing against printed coefficients, Canonical for any dynamics.
enum class Normalization { Raw, Canonical };

// Whether couplings are evaluated at the bare or flux-corrected mode
// frequencies.
enum class FrequencyChoice { Corrected, Bare };

// H = sum_ij M_ij a_i+ a_j + sum_j D_j a_j+ a_j
//   + sum_{i<=j} (P_ij a_i a_j + h.c.)
// per the stored mode list. M Hermitian, P symmetric, all entries joule.
struct QuadraticHamiltonian {
  std::vector<ModeIndex> modes;
  Eigen::MatrixXcd hopping_matrix;
  Eigen::MatrixXcd pairing_matrix;
  Eigen::VectorXd diagonal_shift;
  // Index of the drive tone whose envelope multiplies this block, when the
  // block was split out of a modulated interaction.
  std::optional<int> time_tag;

  int size() const { return static_cast<int>(modes.size()); }

  // Hermiticity of M, symmetry of P, shape agreement. Relative tolerance
  // against the largest entry magnitude. Throws std::logic_error.
  void validate(double tol = 1e-14) const;

  // Mode lists must match elementwise.
  QuadraticHamiltonian& operator+=(const QuadraticHamiltonian& other);
};

QuadraticHamiltonian zero_hamiltonian(std::vector<ModeIndex> modes);

// Free part sum hbar*freq_bare * a+a, in the requested normalization.
QuadraticHamiltonian free_term(const CircuitParams& p,
                               const std::vector<ModeIndex>& modes,
                               Normalization norm);

// The six faces of the flux interaction at the static working point E_0.
// A sinusoidal drive multiplies every entry by E(t)/E_0; see TimedTerm.
QuadraticHamiltonian energy_shift_term(const CircuitParams& p,
                                       const std::vector<ModeIndex>& modes,
                                       Normalization norm);
QuadraticHamiltonian hopping_term(const CircuitParams& p,
                                  const std::vector<ModeIndex>& modes,
                                  Normalization norm);
QuadraticHamiltonian raman_internal_term(const CircuitParams& p,
                                         const std::vector<ModeIndex>& modes,
                                         Normalization norm);
QuadraticHamiltonian single_mode_squeeze_term(
    const CircuitParams& p, const std::vector<ModeIndex>& modes,
    Normalization norm);
QuadraticHamiltonian two_mode_squeeze_internal_term(
    const CircuitParams& p, const std::vector<ModeIndex>& modes,
    Normalization norm);
QuadraticHamiltonian interline_squeeze_term(const CircuitParams& p,
                                            const std::vector<ModeIndex>& modes,
                                            Normalization norm);

// Sum of all six at the static working point.
QuadraticHamiltonian full_interaction(const CircuitParams& p,
                                      const std::vector<ModeIndex>& modes,
                                      Normalization norm);

// One quadratic block with the envelope const_coeff
// + sum_m eps_m sin(omega_m t) + kappa_m cos(omega_m t) multiplying it.
struct TimedTerm {
  QuadraticHamiltonian h;
  double const_coeff = 1.0;
  std::vector<DriveTone> tones;
};

double term_scale(const TimedTerm& term, double t);

// Free part plus the six-face interaction scaled by E(t)/E_0 of the drive.
std::vector<TimedTerm> driven_interaction(const CircuitParams& p,
                                          const DriveSpec& drive,
                                          const std::vector<ModeIndex>& modes,
                                          Normalization norm);

// Rotating-frame coupling rates (rad/s) for one left-right pair. Modulated
// couplings read their amplitude from the drive tone nearest the respective
// resonance frequency; with no tones they vanish and only the always-on
// hopping rate g survives.
struct CouplingConstants {
  double xi_hp = 0.0;  // photon-conversion rate of the static coupling
  double xi_rm = 0.0;  // driven Raman conversion rate
  double xi_sq = 0.0;  // driven interline pair-generation rate
  double xi_sl = 0.0;  // driven left single-mode squeeze rate
  double xi_sr = 0.0;  // driven right single-mode squeeze rate
  double g = 0.0;      // per-monomial static cross-line rate, xi_hp = 2g
};

CouplingConstants effective_couplings(
    const ModeIndex& left, const ModeIndex& right, const DriveSpec& drive,
    const CircuitParams& p, FrequencyChoice choice = FrequencyChoice::Corrected);

// Static rotating-frame Hamiltonian a classified resonance generates, in
// canonical normalization with phases dropped. Throws UnsupportedResonance
// for kinds without a closed effective form and DetuningTooLarge when the
// recorded residual exceeds tol.
QuadraticHamiltonian rwa_effective_hamiltonian(
    const ResonanceSpec& res, const DriveSpec& drive, const CircuitParams& p,
    std::optional<double> tol = std::nullopt);

// Pairwise assembly over the union of the modes of several resonances.
QuadraticHamiltonian rwa_effective_hamiltonian(
    const std::vector<ResonanceSpec>& specs, const DriveSpec& drive,
    const CircuitParams& p, std::optional<double> tol = std::nullopt);

// Numerical rotating-wave filter. Frame frequencies are read off the static
// diagonal of the terms; every monomial picks up exp(i*net*t) with net its
// frame detuning shifted by each drive sideband, and survives only when
// |net| <= tol (rad/s). Returns the static rotating-frame Hamiltonian; the
// frame-defining diagonal itself is excluded.
QuadraticHamiltonian rwa_filter(const std::vector<TimedTerm>& terms,
                                double tol);

}  // namespace ctl
