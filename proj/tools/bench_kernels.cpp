// Times the sparse generator matvec (the inner loop of every Fock
// propagation) in its serial and OpenMP row-parallel forms, plus one full
// propagation, across basis sizes. Run with CTL_SIM_THREADS to cap threads.

#include <chrono>
#include <cstdio>
#include <vector>

#include "ctl/circuit.hpp"
#include "ctl/constants.hpp"
#include "ctl/fock.hpp"
#include "ctl/hamiltonian.hpp"
#include "ctl/random.hpp"
#include "ctl/threads.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Conversion plus pair generation between two modes, rates of order one so
// the spectrum is tame.
ctl::QuadraticHamiltonian test_hamiltonian() {
  ctl::QuadraticHamiltonian h = ctl::zero_hamiltonian(
      {{1, ctl::Line::Left}, {1, ctl::Line::Right}});
  const double hb = ctl::constants::hbar;
  h.hopping_matrix(0, 1) = 0.7 * hb;
  h.hopping_matrix(1, 0) = 0.7 * hb;
  h.pairing_matrix(0, 1) = 0.3 * hb;
  h.pairing_matrix(1, 0) = 0.3 * hb;
  h.diagonal_shift(0) = 1.1 * hb;
  h.diagonal_shift(1) = 0.9 * hb;
  return h;
}

Eigen::VectorXcd random_vector(int dim, ctl::RandomStream& rng) {
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = std::complex<double>(rng.normal(), rng.normal());
  }
  v /= v.norm();
  return v;
}

}  // namespace

int main() {
  ctl::configure_threads_from_env();
#if defined(_OPENMP)
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (serial build)\n");
#endif

  const ctl::QuadraticHamiltonian h = test_hamiltonian();
  ctl::RandomStream rng(20240817);

  std::printf("%10s %12s %12s %12s %8s\n", "dim", "nnz", "serial s", "parallel s",
              "speedup");
  for (int cutoff : {31, 63, 127, 255}) {
    const ctl::FockBasis basis({cutoff, cutoff});
    const ctl::SparseGenerator gen = ctl::fock_generator(h, basis);
    const Eigen::VectorXcd x = random_vector(basis.dim, rng);
    Eigen::VectorXcd y(basis.dim);

    const int reps = 40000000 / basis.dim + 1;
    auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) ctl::apply_generator_serial(gen, x, y);
    const double serial = seconds_since(t0) / reps;

    t0 = Clock::now();
    for (int r = 0; r < reps; ++r) ctl::apply_generator(gen, x, y);
    const double parallel = seconds_since(t0) / reps;

    std::printf("%10d %12d %12.3e %12.3e %8.2f\n", basis.dim,
                static_cast<int>(gen.nonZeros()), serial, parallel,
                serial / parallel);
  }

  {
    const std::vector<int> cutoffs{60, 60};
    const ctl::FockState vac =
        ctl::FockState::basis_state(cutoffs, {0, 0});
    auto t0 = Clock::now();
    const ctl::FockState out = ctl::fock_propagate(h, vac, 1.0, 1e-10);
    std::printf("full propagation, dim %d: %.3f s (leak %.1e)\n",
                static_cast<int>(out.amplitudes.size()), seconds_since(t0),
                out.leakage);
  }
  return 0;
}
