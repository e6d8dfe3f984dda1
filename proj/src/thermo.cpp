#include "ctl/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "ctl/constants.hpp"
#include "ctl/dynamics.hpp"
#include "ctl/errors.hpp"
#include "ctl/hamiltonian.hpp"

namespace ctl {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};

void check_grid(const std::vector<double>& t_grid) {
  if (t_grid.empty()) {
    throw std::invalid_argument("empty time grid");
  }
  if (t_grid.front() < 0.0 ||
      !std::is_sorted(t_grid.begin(), t_grid.end())) {
    throw std::invalid_argument("time grid must be sorted and non-negative");
  }
}

double trapezoid_average(const std::vector<double>& t,
                         const std::vector<double>& f) {
  if (t.size() < 2 || t.back() == t.front()) return f.front();
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    integral += 0.5 * (f[k] + f[k + 1]) * (t[k + 1] - t[k]);
  }
  return integral / (t.back() - t.front());
}

}  // namespace

double thermal_occupation(double temperature, double freq) {
  if (temperature < 0.0 || freq <= 0.0) {
    throw std::invalid_argument("need T >= 0 and freq > 0");
  }
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(constants::hbar * freq /
                          (constants::k_boltzmann * temperature));
}

double amplifier_power(double t, complex<double> ab_cross_moment, double xi,
                       double drive_freq) {
  const complex<double> rotated = std::exp(kI * drive_freq * t) * ab_cross_moment;
  const complex<double> value =
      kI * constants::hbar * drive_freq * xi * (rotated - std::conj(rotated));
  if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real()))) {
    throw std::logic_error("pump power acquired an imaginary part");
  }
  return value.real();
}

std::vector<double> default_stroke_grid(double xi, int n_points) {
  if (xi == 0.0) {
    throw NoInteraction("no conversion, the stroke has no finite period");
  }
  if (n_points < 2) {
    throw std::invalid_argument("need at least two grid points");
  }
  const double t_end = std::numbers::pi / (2.0 * std::abs(xi));
  std::vector<double> grid(n_points);
  for (int k = 0; k < n_points; ++k) {
    grid[k] = t_end * k / (n_points - 1);
  }
  return grid;
}

PowerTrace simulate_amplifier_occupations(double n_hot, double n_cold,
                                          double xi, double drive_freq,
                                          const std::vector<double>& t_grid,
                                          double tol) {
  check_grid(t_grid);
  if (n_hot < 0.0 || n_cold < 0.0) {
    throw std::invalid_argument("negative occupation");
  }

  PowerTrace trace;
  trace.times = t_grid;
  trace.power.resize(t_grid.size());
  trace.n_hot = n_hot;
  trace.n_cold = n_cold;
  trace.xi = xi;
  trace.drive_freq = drive_freq;

  if (xi == 0.0) {
    trace.power.assign(t_grid.size(), 0.0);
    trace.time_average = 0.0;
    return trace;
  }

  // Interaction-picture conversion block -hbar*xi*(a+b + ab+), the gauge
  // amplifier_power assumes; together they give P = -hbar*Omega*d<n_a>/dt.
  QuadraticHamiltonian h =
      zero_hamiltonian({{1, Line::Left}, {1, Line::Right}});
  h.hopping_matrix(0, 1) = -constants::hbar * xi;
  h.hopping_matrix(1, 0) = -constants::hbar * xi;

  GaussianState state = GaussianState::thermal({n_hot, n_cold});
  double t_now = 0.0;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (t_grid[k] > t_now) {
      state.apply(symplectic_propagate(h, t_now, t_grid[k], tol));
      t_now = t_grid[k];
    }
    const complex<double> lab_moment =
        std::exp(-kI * drive_freq * t_now) * state.ladder_cross_moment(0, 1);
    trace.power[k] = amplifier_power(t_now, lab_moment, xi, drive_freq);
  }
  trace.time_average = trapezoid_average(trace.times, trace.power);
  return trace;
}

PowerTrace simulate_amplifier(const BathSpec& hot, const BathSpec& cold,
                              const DriveSpec& drive, const CircuitParams& p,
                              const std::vector<double>& t_grid, double tol) {
  p.validate();
  if (hot.attached_mode.line != Line::Left ||
      cold.attached_mode.line != Line::Right) {
    throw std::invalid_argument(
        "hot bath attaches to the left line, cold to the right");
  }
  const double w = omega_corrected(hot.attached_mode.j, p);
  const double u = upsilon_corrected(cold.attached_mode.j, p);
  if (w <= u) {
    throw std::invalid_argument(
        "hot bath must sit on the higher-frequency mode");
  }

  const std::vector<ModeIndex> pair{hot.attached_mode, cold.attached_mode};
  const auto specs = classify_resonances(drive, p, pair);
  const ResonanceSpec* match = nullptr;
  for (const ResonanceSpec& s : specs) {
    if (s.kind == ResonanceKind::RamanLtoR &&
        s.mode_left == hot.attached_mode && s.mode_right == cold.attached_mode) {
      match = &s;
      break;
    }
  }
  if (match == nullptr) {
    throw DetuningTooLarge("no drive tone matches the conversion gap");
  }

  const CouplingConstants couplings =
      effective_couplings(hot.attached_mode, cold.attached_mode, drive, p);
  PowerTrace trace = simulate_amplifier_occupations(
      thermal_occupation(hot.temperature, w),
      thermal_occupation(cold.temperature, u), couplings.xi_rm,
      drive.tones[*match->drive_tone_index].omega, t_grid, tol);
  return trace;
}

}  // namespace ctl
