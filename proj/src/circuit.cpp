#include "ctl/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ctl/constants.hpp"

namespace ctl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_mode_number(int j, const CircuitParams& p) {
  if (j == 0 || std::abs(j) > p.n_cells / 2) {
    throw std::domain_error("mode number " + std::to_string(j) +
                            " outside first Brillouin zone for N = " +
                            std::to_string(p.n_cells));
  }
}

}  // namespace

void CircuitParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) {
      throw std::invalid_argument(std::string(name) + " must be positive");
    }
  };
  positive(c_left, "c_left");
  positive(l_left, "l_left");
  positive(c_right, "c_right");
  positive(l_right, "l_right");
  positive(dx, "dx");
  if (n_cells <= 0 || n_cells % 2 != 0) {
    throw std::invalid_argument("n_cells must be positive and even");
  }
  if (i_crit < 0.0) {
    throw std::invalid_argument("i_crit must be non-negative");
  }
}

double CircuitParams::josephson_energy() const {
  return constants::hbar * i_crit / (2.0 * constants::elementary_charge);
}

double CircuitParams::squid_prefactor() const {
  const double factor = kTwoPi / constants::flux_quantum;
  return josephson_energy() * factor * factor;
}

double wave_vector(int j, const CircuitParams& p) {
  check_mode_number(j, p);
  return kTwoPi * j / (p.n_cells * p.dx);
}

double half_cell_sine(int j, const CircuitParams& p) {
  check_mode_number(j, p);
  return std::abs(std::sin(std::numbers::pi * j / p.n_cells));
}

double omega_bare(int j, const CircuitParams& p) {
  return 1.0 / (2.0 * std::sqrt(p.c_left * p.l_left) * half_cell_sine(j, p));
}

double upsilon_bare(int j, const CircuitParams& p) {
  return 2.0 * half_cell_sine(j, p) / std::sqrt(p.c_right * p.l_right);
}

double epsilon_bare(int j, const CircuitParams& p) {
  const double s = half_cell_sine(j, p);
  return 4.0 * constants::hbar * omega_bare(j, p) * s * s;
}

double omega_corrected(int j, const CircuitParams& p) {
  const double s = half_cell_sine(j, p);
  const double w = omega_bare(j, p);
  return w + p.squid_prefactor() / (4.0 * p.n_cells * p.c_left * w * s * s);
}

double upsilon_corrected(int j, const CircuitParams& p) {
  const double u = upsilon_bare(j, p);
  return u + p.squid_prefactor() / (p.n_cells * p.c_right * u);
}

double epsilon_corrected(int j, const CircuitParams& p) {
  return epsilon_bare(j, p) + constants::hbar * p.squid_prefactor() /
                                  (p.n_cells * p.c_left * omega_bare(j, p));
}

double mode_freq_bare(const ModeIndex& m, const CircuitParams& p) {
  return m.line == Line::Left ? omega_bare(m.j, p) : upsilon_bare(m.j, p);
}

double mode_freq_corrected(const ModeIndex& m, const CircuitParams& p) {
  return m.line == Line::Left ? omega_corrected(m.j, p)
                              : upsilon_corrected(m.j, p);
}

double drive_energy(double t, const DriveSpec& d) {
  double envelope = 1.0;
  for (const DriveTone& tone : d.tones) {
    envelope += tone.eps * std::sin(tone.omega * t) +
                tone.kappa * std::cos(tone.omega * t);
  }
  return d.e0 * envelope;
}

double chi(double t, const DriveSpec& d, const CircuitParams& p) {
  const double factor = kTwoPi / constants::flux_quantum;
  return constants::hbar * drive_energy(t, d) * factor * factor /
         (2.0 * p.n_cells);
}

}  // namespace ctl
