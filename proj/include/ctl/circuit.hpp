#pragma once

#include <vector>

namespace ctl {

// Left line is the band-inverted (composite-right-handed in layout,
// left-handed in dispersion) side; Right is the conventional side.
enum class Line { Left, Right };

// Signed traveling-wave mode label, 1 <= |j| <= n_cells/2.
struct ModeIndex {
  int j = 0;
  Line line = Line::Left;
  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

struct CircuitParams {
  double c_left = 0.0;   // F, per cell
  double l_left = 0.0;   // H, per cell
  double c_right = 0.0;  // F, per cell
  double l_right = 0.0;  // H, per cell
  int n_cells = 0;       // cells per line, even
  double dx = 1.0;  // m; cancels in every k*dx product
  double i_crit = 0.0;   // A, junction critical current; 0 turns the SQUID off

  // Throws std::invalid_argument on non-positive elements or odd n_cells.
  void validate() const;

  // Static junction energy hbar*i_crit/(2e), the physical Josephson
  // relation. The alternative convention I_c*phi_0 is larger by exactly
  // 2*pi and breaks the reference capacitance-matching values.
  double josephson_energy() const;

  // josephson_energy() * (2*pi/phi_0)^2, the scale of every flux-driven
  // correction and coupling. Units J/Wb^2 = 1/H.
  double squid_prefactor() const;
};

// k_j = 2*pi*j/(N*dx); throws std::domain_error outside 1 <= |j| <= N/2.
double wave_vector(int j, const CircuitParams& p);

// |sin(k_j*dx/2)| = |sin(pi*j/N)|, the half-cell phase factor both
// dispersions are built from.
double half_cell_sine(int j, const CircuitParams& p);

// Left line, decreasing in |j|: omega_j = 1/(2*sqrt(C_l*L_l)*|sin(pi*j/N)|).
double omega_bare(int j, const CircuitParams& p);

// Right line, increasing in |j|: upsilon_j = 2*|sin(pi*j/N)|/sqrt(C_r*L_r).
double upsilon_bare(int j, const CircuitParams& p);

// Energy-normalization weight of a left mode: 4*hbar*omega_j*sin^2(pi*j/N).
double epsilon_bare(int j, const CircuitParams& p);

// Static-flux corrected frequencies and weight; reduce to the bare values
// when i_crit = 0 and always lie above them.
double omega_corrected(int j, const CircuitParams& p);
double upsilon_corrected(int j, const CircuitParams& p);
double epsilon_corrected(int j, const CircuitParams& p);

// Dispatch on mode.line: omega_* for Left, upsilon_* for Right.
double mode_freq_bare(const ModeIndex& m, const CircuitParams& p);
double mode_freq_corrected(const ModeIndex& m, const CircuitParams& p);

// One harmonic of the flux drive on top of the static working point.
struct DriveTone {
  double eps = 0.0;    // sin amplitude, dimensionless
  double kappa = 0.0;  // cos amplitude, dimensionless
  double omega = 0.0;  // rad/s
};

struct DriveSpec {
  double e0 = 0.0;  // J, static junction energy the tones multiply
  std::vector<DriveTone> tones;
};

// E(t) = e0 * (1 + sum_m eps_m*sin(omega_m t) + kappa_m*cos(omega_m t)).
double drive_energy(double t, const DriveSpec& d);

// Per-monomial interaction scale hbar*E(t)*(2*pi/phi_0)^2/(2*N). Units J
// after the mode brackets (which carry 1/sqrt(C*freq) each) are attached.
double chi(double t, const DriveSpec& d, const CircuitParams& p);

}  // namespace ctl
