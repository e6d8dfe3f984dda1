#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ctl/hamiltonian.hpp"

namespace ctl {

// Heisenberg-picture linear map a_i(t) = phase_i sum_j (A_ij a_j + B_ij a_j+).
// frame_phases carry the free rotation so A and B stay slow.
struct BogoliubovTransform {
  Eigen::MatrixXcd a_coeffs;
  Eigen::MatrixXcd b_coeffs;
  Eigen::VectorXcd frame_phases;

  int size() const { return static_cast<int>(a_coeffs.rows()); }
  Eigen::MatrixXcd total_a() const;  // diag(phases) * A
  Eigen::MatrixXcd total_b() const;
  // max |(A A+ - B B+) - I|; phases drop out.
  double commutation_defect() const;
  static BogoliubovTransform identity(int n_modes);
};

// Flow of -hbar*xi*(a+b + ab+) on top of a common frame omega: beam-splitter
// rotation cos(xi t), i sin(xi t). The printed conversion rates are negative,
// so the physical flow is evolve_hopping(|xi|) up to a gauge on b.
BogoliubovTransform evolve_hopping(double xi, double omega, double t);

// Same mixing block with distinct frame frequencies for the two modes.
BogoliubovTransform evolve_raman(double xi, double omega_left,
                                 double upsilon_right, double t);

// Flow of +hbar*xi*(a+b+ + ab): cosh(xi t) diagonal, -i sinh(xi t) pair
// mixing, frames as given.
BogoliubovTransform evolve_squeeze(double xi, double omega_left,
                                   double upsilon_right, double t);

// second after first, with frame phases folded into the coefficient blocks
// (result phases are 1).
BogoliubovTransform compose(const BogoliubovTransform& second,
                            const BogoliubovTransform& first);

// Quadrature map in mode-interleaved (x1, p1, x2, p2, ...) layout with
// x = (a + a+)/sqrt(2), p = -i(a - a+)/sqrt(2).
Eigen::MatrixXd to_symplectic(const BogoliubovTransform& transform);

// Block-diagonal [[0, 1], [-1, 0]] per mode.
Eigen::MatrixXd symplectic_form(int n_modes);

// Generator G of dR/dt = G R for the quadrature vector under the given
// Hamiltonian; satisfies G^T J + J G = 0 with J the symplectic form.
Eigen::MatrixXd quadrature_generator(const QuadraticHamiltonian& h);

// Quadrature propagator S(t0 -> t1) of a (possibly modulated) quadratic
// Hamiltonian, via the shared adaptive integrator. |S^T J S - J| stays
// within 10*tol of zero.
Eigen::MatrixXd symplectic_propagate(const std::vector<TimedTerm>& terms,
                                     double t0, double t1, double tol = 1e-10);
Eigen::MatrixXd symplectic_propagate(const QuadraticHamiltonian& h, double t0,
                                     double t1, double tol = 1e-10);

// Gaussian state as first and second quadrature moments; vacuum variance is
// 1/2 per quadrature.
struct GaussianState {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;

  static GaussianState vacuum(int n_modes);
  static GaussianState thermal(const std::vector<double>& occupations);

  int n_modes() const { return static_cast<int>(mean.size()) / 2; }
  void apply(const Eigen::MatrixXd& s);

  // Most negative eigenvalue of cov + i J/2, clipped at zero; physical
  // states keep it at numerical zero.
  double uncertainty_defect() const;

  double occupation(int mode) const;  // <a+ a>
  // <a_i a_j+>, the commutator-ordered cross moment.
  std::complex<double> ladder_cross_moment(int i, int j) const;
};

}  // namespace ctl
