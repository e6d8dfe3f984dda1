#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ctl/hamiltonian.hpp"

namespace ctl {

// Row-major occupancy-number basis; cutoffs[m] is the largest occupancy the
// basis represents for mode m.
struct FockBasis {
  std::vector<int> cutoffs;
  std::vector<int> strides;
  int dim = 0;

  explicit FockBasis(std::vector<int> cutoffs);
  int n_modes() const { return static_cast<int>(cutoffs.size()); }
  int index(const std::vector<int>& occupancy) const;
  std::vector<int> occupancy(int index) const;
};

struct FockState {
  std::vector<int> cutoffs;
  Eigen::VectorXcd amplitudes;
  // Probability found on the truncation boundary after the last propagation.
  double leakage = 0.0;

  static FockState basis_state(std::vector<int> cutoffs,
                               const std::vector<int>& occupancy);
  double norm() const { return amplitudes.norm(); }
};

using SparseGenerator =
    Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

// H/hbar projected onto the truncated basis (exactly P H P, so Hermitian).
SparseGenerator fock_generator(const QuadraticHamiltonian& h,
                               const FockBasis& basis);

// y = a * x. The parallel version splits CSR rows across OpenMP threads and
// is bitwise identical to the serial one since rows are independent.
void apply_generator_serial(const SparseGenerator& a, const Eigen::VectorXcd& x,
                            Eigen::VectorXcd& y);
void apply_generator(const SparseGenerator& a, const Eigen::VectorXcd& x,
                     Eigen::VectorXcd& y);

// Probability of any mode sitting exactly at its cutoff.
double top_layer_probability(const FockBasis& basis,
                             const Eigen::VectorXcd& amplitudes);

// Schroedinger propagation exp(-i H t/hbar) psi0 on the truncated basis.
// The initial state must not touch the boundary; if the final boundary
// probability exceeds 1e-8 the cutoffs are doubled once and the run
// repeated, after which LeakageExceeded is raised. Norm is checked to
// 1e-10 relative.
FockState fock_propagate(const QuadraticHamiltonian& h, const FockState& psi0,
                         double t, double tol = 1e-12);

// Bare propagation on a fixed basis, for operator-chain evaluations that
// manage truncation themselves.
Eigen::VectorXcd evolve_in_basis(const SparseGenerator& gen,
                                 Eigen::VectorXcd psi, double t,
                                 double tol = 1e-12);

// Ladder operators on the fixed basis; creation out of the top layer is
// dropped (the caller provides headroom).
Eigen::VectorXcd apply_annihilation(const FockBasis& basis,
                                    const Eigen::VectorXcd& psi, int mode);
Eigen::VectorXcd apply_creation(const FockBasis& basis,
                                const Eigen::VectorXcd& psi, int mode);

double number_expectation(const FockBasis& basis, const Eigen::VectorXcd& psi,
                          int mode);

// Two-photon interference output under resonant conversion at rate xi:
// cos(2 xi t)|11> + i sin(2 xi t)(|20> + |02>)/sqrt(2), on cutoffs {3, 3}.
FockState hom_output_state(double xi, double t);

}  // namespace ctl
