#pragma once

#include <complex>
#include <vector>

#include "ctl/circuit.hpp"
#include "ctl/matching.hpp"

namespace ctl {

struct BathSpec {
  double temperature = 0.0;  // K
  ModeIndex attached_mode;
};

// Bose-Einstein occupation at angular frequency freq; exactly 0 at T = 0.
double thermal_occupation(double temperature, double freq);

// Instantaneous pump power i hbar Omega xi (e^{i Omega t} <a b+> - c.c.)
// from the lab-frame cross moment of the converted pair. The expression is
// real by construction; a residual imaginary part flags a broken moment.
double amplifier_power(double t, std::complex<double> ab_cross_moment,
                       double xi, double drive_freq);

struct PowerTrace {
  std::vector<double> times;   // s
  std::vector<double> power;   // W
  double time_average = 0.0;   // trapezoid over the grid
  double n_hot = 0.0;          // initial occupation of the converted pair
  double n_cold = 0.0;
  double xi = 0.0;             // conversion rate used, rad/s
  double drive_freq = 0.0;     // rad/s
};

// Uniform grid over one full conversion stroke [0, pi/(2|xi|)].
std::vector<double> default_stroke_grid(double xi, int n_points);

// Heat-engine stroke between two thermal baths: occupations from the bath
// temperatures at the corrected mode frequencies, Raman conversion between
// the attached modes under the drive (the classifier must find the match),
// power from the Gaussian-propagated cross moment. The hot bath must sit on
// the left (higher-frequency) mode.
PowerTrace simulate_amplifier(const BathSpec& hot, const BathSpec& cold,
                              const DriveSpec& drive, const CircuitParams& p,
                              const std::vector<double>& t_grid,
                              double tol = 1e-10);

// Same stroke at explicit occupations and rates; exactly antisymmetric
// under exchanging n_hot and n_cold.
PowerTrace simulate_amplifier_occupations(double n_hot, double n_cold,
                                          double xi, double drive_freq,
                                          const std::vector<double>& t_grid,
                                          double tol = 1e-10);

}  // namespace ctl
