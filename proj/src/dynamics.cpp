#include "ctl/dynamics.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "ctl/constants.hpp"
#include "ctl/integrate.hpp"

namespace ctl {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};

}  // namespace

Eigen::MatrixXcd BogoliubovTransform::total_a() const {
  return frame_phases.asDiagonal() * a_coeffs;
}

Eigen::MatrixXcd BogoliubovTransform::total_b() const {
  return frame_phases.asDiagonal() * b_coeffs;
}

double BogoliubovTransform::commutation_defect() const {
  const auto n = a_coeffs.rows();
  const Eigen::MatrixXcd defect = a_coeffs * a_coeffs.adjoint() -
                                  b_coeffs * b_coeffs.adjoint() -
                                  Eigen::MatrixXcd::Identity(n, n);
  return defect.cwiseAbs().maxCoeff();
}

BogoliubovTransform BogoliubovTransform::identity(int n_modes) {
  return {Eigen::MatrixXcd::Identity(n_modes, n_modes),
          Eigen::MatrixXcd::Zero(n_modes, n_modes),
          Eigen::VectorXcd::Ones(n_modes)};
}

BogoliubovTransform evolve_hopping(double xi, double omega, double t) {
  BogoliubovTransform bt = BogoliubovTransform::identity(2);
  const double c = std::cos(xi * t);
  const complex<double> is = kI * std::sin(xi * t);
  bt.a_coeffs << c, is, is, c;
  bt.frame_phases << std::exp(-kI * omega * t), std::exp(-kI * omega * t);
  return bt;
}

BogoliubovTransform evolve_raman(double xi, double omega_left,
                                 double upsilon_right, double t) {
  BogoliubovTransform bt = evolve_hopping(xi, 0.0, t);
  bt.frame_phases << std::exp(-kI * omega_left * t),
      std::exp(-kI * upsilon_right * t);
  return bt;
}

BogoliubovTransform evolve_squeeze(double xi, double omega_left,
                                   double upsilon_right, double t) {
  BogoliubovTransform bt = BogoliubovTransform::identity(2);
  const double ch = std::cosh(xi * t);
  const complex<double> mish = -kI * std::sinh(xi * t);
  bt.a_coeffs << ch, 0.0, 0.0, ch;
  bt.b_coeffs << 0.0, mish, mish, 0.0;
  bt.frame_phases << std::exp(-kI * omega_left * t),
      std::exp(-kI * upsilon_right * t);
  return bt;
}

BogoliubovTransform compose(const BogoliubovTransform& second,
                            const BogoliubovTransform& first) {
  if (second.size() != first.size()) {
    throw std::invalid_argument("transform sizes differ");
  }
  const Eigen::MatrixXcd a1 = first.total_a();
  const Eigen::MatrixXcd b1 = first.total_b();
  const Eigen::MatrixXcd a2 = second.total_a();
  const Eigen::MatrixXcd b2 = second.total_b();
  return {a2 * a1 + b2 * b1.conjugate(), a2 * b1 + b2 * a1.conjugate(),
          Eigen::VectorXcd::Ones(first.size())};
}

Eigen::MatrixXd to_symplectic(const BogoliubovTransform& transform) {
  const int n = transform.size();
  const Eigen::MatrixXcd sum = transform.total_a() + transform.total_b().conjugate();
  const Eigen::MatrixXcd dif = transform.total_a() - transform.total_b().conjugate();
  Eigen::MatrixXd s(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      s(2 * i, 2 * j) = std::real(sum(i, j));
      s(2 * i, 2 * j + 1) = -std::imag(sum(i, j));
      s(2 * i + 1, 2 * j) = std::imag(dif(i, j));
      s(2 * i + 1, 2 * j + 1) = std::real(dif(i, j));
    }
  }
  return s;
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int m = 0; m < n_modes; ++m) {
    j(2 * m, 2 * m + 1) = 1.0;
    j(2 * m + 1, 2 * m) = -1.0;
  }
  return j;
}

Eigen::MatrixXd quadrature_generator(const QuadraticHamiltonian& h) {
  h.validate();
  const int n = h.size();
  const Eigen::MatrixXcd w =
      (h.hopping_matrix +
       Eigen::MatrixXcd(h.diagonal_shift.cast<complex<double>>().asDiagonal())) /
      constants::hbar;
  // Pairing enters the equations of motion conjugated, diagonal twice (the
  // i = j monomial hits both derivative slots).
  Eigen::MatrixXcd k = h.pairing_matrix.conjugate() / constants::hbar;
  k.diagonal() *= 2.0;

  const Eigen::MatrixXd wr = w.real();
  const Eigen::MatrixXd wi = w.imag();
  const Eigen::MatrixXd kr = k.real();
  const Eigen::MatrixXd ki = k.imag();

  Eigen::MatrixXd g(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      g(2 * a, 2 * b) = wi(a, b) + ki(a, b);
      g(2 * a, 2 * b + 1) = wr(a, b) - kr(a, b);
      g(2 * a + 1, 2 * b) = -(wr(a, b) + kr(a, b));
      g(2 * a + 1, 2 * b + 1) = wi(a, b) - ki(a, b);
    }
  }
  return g;
}

Eigen::MatrixXd symplectic_propagate(const std::vector<TimedTerm>& terms,
                                     double t0, double t1, double tol) {
  if (terms.empty()) {
    throw std::invalid_argument("no terms to propagate");
  }
  for (const TimedTerm& term : terms) {
    if (term.h.modes != terms[0].h.modes) {
      throw std::invalid_argument("terms span different mode lists");
    }
  }
  std::vector<Eigen::MatrixXd> gens;
  gens.reserve(terms.size());
  for (const TimedTerm& term : terms) gens.push_back(quadrature_generator(term.h));

  const auto dim = gens[0].rows();
  auto rhs = [&](double t, const Eigen::MatrixXd& s) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      g += term_scale(terms[k], t) * gens[k];
    }
    return Eigen::MatrixXd(g * s);
  };
  auto norm = [](const Eigen::MatrixXd& s) { return s.cwiseAbs().maxCoeff(); };

  return detail::rk45(Eigen::MatrixXd(Eigen::MatrixXd::Identity(dim, dim)), t0,
                      t1, tol, rhs, norm);
}

Eigen::MatrixXd symplectic_propagate(const QuadraticHamiltonian& h, double t0,
                                     double t1, double tol) {
  return symplectic_propagate(std::vector<TimedTerm>{{h, 1.0, {}}}, t0, t1, tol);
}

GaussianState GaussianState::vacuum(int n_modes) {
  return {Eigen::VectorXd::Zero(2 * n_modes),
          0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes)};
}

GaussianState GaussianState::thermal(const std::vector<double>& occupations) {
  const int n = static_cast<int>(occupations.size());
  GaussianState st = vacuum(n);
  for (int m = 0; m < n; ++m) {
    if (occupations[m] < 0.0) {
      throw std::invalid_argument("negative thermal occupation");
    }
    st.covariance(2 * m, 2 * m) = occupations[m] + 0.5;
    st.covariance(2 * m + 1, 2 * m + 1) = occupations[m] + 0.5;
  }
  return st;
}

void GaussianState::apply(const Eigen::MatrixXd& s) {
  mean = s * mean;
  covariance = s * covariance * s.transpose();
}

double GaussianState::uncertainty_defect() const {
  const int n = n_modes();
  const Eigen::MatrixXcd m =
      covariance.cast<complex<double>>() +
      0.5 * kI * symplectic_form(n).cast<complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  const double lowest = solver.eigenvalues().minCoeff();
  return lowest < 0.0 ? -lowest : 0.0;
}

double GaussianState::occupation(int mode) const {
  const int x = 2 * mode;
  const int p = 2 * mode + 1;
  return 0.5 * (covariance(x, x) + covariance(p, p) - 1.0) +
         0.5 * (mean(x) * mean(x) + mean(p) * mean(p));
}

std::complex<double> GaussianState::ladder_cross_moment(int i, int j) const {
  const int xi = 2 * i, pi = 2 * i + 1, xj = 2 * j, pj = 2 * j + 1;
  complex<double> v =
      0.5 * complex<double>(covariance(xi, xj) + covariance(pi, pj),
                            covariance(pi, xj) - covariance(xi, pj));
  if (i == j) v += 0.5;
  const complex<double> mi{mean(xi) / std::numbers::sqrt2,
                           mean(pi) / std::numbers::sqrt2};
  const complex<double> mj{mean(xj) / std::numbers::sqrt2,
                           mean(pj) / std::numbers::sqrt2};
  return v + mi * std::conj(mj);
}

}  // namespace ctl
