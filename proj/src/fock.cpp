#include "ctl/fock.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctl/constants.hpp"
#include "ctl/errors.hpp"
#include "ctl/integrate.hpp"

namespace ctl {

namespace {

using std::complex;
using Triplet = Eigen::Triplet<complex<double>>;

constexpr double kLeakageBudget = 1e-8;

}  // namespace

FockBasis::FockBasis(std::vector<int> cuts) : cutoffs(std::move(cuts)) {
  if (cutoffs.empty()) {
    throw std::invalid_argument("empty cutoff list");
  }
  strides.resize(cutoffs.size());
  int stride = 1;
  for (int m = static_cast<int>(cutoffs.size()) - 1; m >= 0; --m) {
    if (cutoffs[m] < 1) {
      throw std::invalid_argument("cutoffs must be at least 1");
    }
    strides[m] = stride;
    stride *= cutoffs[m] + 1;
  }
  dim = stride;
}

int FockBasis::index(const std::vector<int>& occupancy) const {
  if (occupancy.size() != cutoffs.size()) {
    throw std::invalid_argument("occupancy length mismatch");
  }
  int idx = 0;
  for (std::size_t m = 0; m < cutoffs.size(); ++m) {
    if (occupancy[m] < 0 || occupancy[m] > cutoffs[m]) {
      throw std::out_of_range("occupancy outside basis");
    }
    idx += occupancy[m] * strides[m];
  }
  return idx;
}

std::vector<int> FockBasis::occupancy(int index) const {
  std::vector<int> occ(cutoffs.size());
  for (std::size_t m = 0; m < cutoffs.size(); ++m) {
    occ[m] = (index / strides[m]) % (cutoffs[m] + 1);
  }
  return occ;
}

FockState FockState::basis_state(std::vector<int> cutoffs,
                                 const std::vector<int>& occupancy) {
  FockBasis basis(cutoffs);
  FockState st{std::move(cutoffs), Eigen::VectorXcd::Zero(basis.dim), 0.0};
  st.amplitudes(basis.index(occupancy)) = 1.0;
  return st;
}

SparseGenerator fock_generator(const QuadraticHamiltonian& h,
                               const FockBasis& basis) {
  h.validate();
  if (h.size() != basis.n_modes()) {
    throw std::invalid_argument("Hamiltonian and basis mode counts differ");
  }
  const int n = h.size();
  const double hb = constants::hbar;
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(basis.dim) * (n * n + 1));

  std::vector<int> occ(n);
  for (int col = 0; col < basis.dim; ++col) {
    for (int m = 0; m < n; ++m) {
      occ[m] = (col / basis.strides[m]) % (basis.cutoffs[m] + 1);
    }

    // a_i+ a_j monomials including the static diagonal.
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        complex<double> coeff = h.hopping_matrix(i, j);
        if (i == j) coeff += h.diagonal_shift(i);
        if (coeff == 0.0) continue;
        if (i == j) {
          if (occ[j] > 0) trips.emplace_back(col, col, coeff / hb * double(occ[j]));
          continue;
        }
        if (occ[j] < 1 || occ[i] >= basis.cutoffs[i]) continue;
        const int row = col - basis.strides[j] + basis.strides[i];
        trips.emplace_back(row, col,
                           coeff / hb *
                               std::sqrt(double(occ[j]) * double(occ[i] + 1)));
      }
    }

    // P_ij a_i a_j + conj(P_ij) a_j+ a_i+ over i <= j.
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const complex<double> coeff = h.pairing_matrix(i, j);
        if (coeff == 0.0) continue;
        if (i == j) {
          if (occ[j] >= 2) {
            trips.emplace_back(col - 2 * basis.strides[j], col,
                               coeff / hb *
                                   std::sqrt(double(occ[j]) * double(occ[j] - 1)));
          }
          if (occ[j] + 2 <= basis.cutoffs[j]) {
            trips.emplace_back(
                col + 2 * basis.strides[j], col,
                std::conj(coeff) / hb *
                    std::sqrt(double(occ[j] + 1) * double(occ[j] + 2)));
          }
          continue;
        }
        if (occ[i] >= 1 && occ[j] >= 1) {
          trips.emplace_back(col - basis.strides[i] - basis.strides[j], col,
                             coeff / hb *
                                 std::sqrt(double(occ[i]) * double(occ[j])));
        }
        if (occ[i] < basis.cutoffs[i] && occ[j] < basis.cutoffs[j]) {
          trips.emplace_back(
              col + basis.strides[i] + basis.strides[j], col,
              std::conj(coeff) / hb *
                  std::sqrt(double(occ[i] + 1) * double(occ[j] + 1)));
        }
      }
    }
  }

  SparseGenerator gen(basis.dim, basis.dim);
  gen.setFromTriplets(trips.begin(), trips.end());
  gen.makeCompressed();
  return gen;
}

void apply_generator_serial(const SparseGenerator& a, const Eigen::VectorXcd& x,
                            Eigen::VectorXcd& y) {
  const int rows = static_cast<int>(a.rows());
  y.resize(rows);
  for (int r = 0; r < rows; ++r) {
    complex<double> acc{0.0, 0.0};
    for (SparseGenerator::InnerIterator it(a, r); it; ++it) {
      acc += it.value() * x[it.col()];
    }
    y[r] = acc;
  }
}

void apply_generator(const SparseGenerator& a, const Eigen::VectorXcd& x,
                     Eigen::VectorXcd& y) {
  const int rows = static_cast<int>(a.rows());
  y.resize(rows);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (rows >= 2048)
#endif
  for (int r = 0; r < rows; ++r) {
    complex<double> acc{0.0, 0.0};
    for (SparseGenerator::InnerIterator it(a, r); it; ++it) {
      acc += it.value() * x[it.col()];
    }
    y[r] = acc;
  }
}

double top_layer_probability(const FockBasis& basis,
                             const Eigen::VectorXcd& amplitudes) {
  if (amplitudes.size() != basis.dim) {
    throw std::invalid_argument("amplitude length mismatch");
  }
  double prob = 0.0;
  for (int idx = 0; idx < basis.dim; ++idx) {
    for (int m = 0; m < basis.n_modes(); ++m) {
      if ((idx / basis.strides[m]) % (basis.cutoffs[m] + 1) ==
          basis.cutoffs[m]) {
        prob += std::norm(amplitudes(idx));
        break;
      }
    }
  }
  return prob;
}

Eigen::VectorXcd evolve_in_basis(const SparseGenerator& gen,
                                 Eigen::VectorXcd psi, double t, double tol) {
  auto rhs = [&gen](double, const Eigen::VectorXcd& v) {
    Eigen::VectorXcd out;
    apply_generator(gen, v, out);
    out *= complex<double>(0.0, -1.0);
    return out;
  };
  auto norm = [](const Eigen::VectorXcd& v) { return v.norm(); };
  return detail::rk45(std::move(psi), 0.0, t, tol, rhs, norm);
}

namespace {

FockState embed(const FockState& st, const std::vector<int>& cutoffs) {
  const FockBasis from(st.cutoffs);
  const FockBasis to(cutoffs);
  FockState out{cutoffs, Eigen::VectorXcd::Zero(to.dim), 0.0};
  for (int idx = 0; idx < from.dim; ++idx) {
    if (st.amplitudes(idx) != 0.0) {
      out.amplitudes(to.index(from.occupancy(idx))) = st.amplitudes(idx);
    }
  }
  return out;
}

}  // namespace

FockState fock_propagate(const QuadraticHamiltonian& h, const FockState& psi0,
                         double t, double tol) {
  {
    const FockBasis basis(psi0.cutoffs);
    if (psi0.amplitudes.size() != basis.dim) {
      throw std::invalid_argument("state amplitudes do not match cutoffs");
    }
    if (top_layer_probability(basis, psi0.amplitudes) > 0.0) {
      throw std::invalid_argument(
          "initial state touches the truncation boundary");
    }
  }

  const double norm_in = psi0.norm();
  auto run = [&](const std::vector<int>& cutoffs) {
    const FockBasis basis(cutoffs);
    const FockState start = embed(psi0, cutoffs);
    FockState out{cutoffs, evolve_in_basis(fock_generator(h, basis),
                                           start.amplitudes, t, tol),
                  0.0};
    if (std::abs(out.norm() - norm_in) > 1e-10 * std::max(1.0, norm_in)) {
      throw std::logic_error("propagation lost norm beyond 1e-10");
    }
    out.leakage = top_layer_probability(basis, out.amplitudes);
    return out;
  };

  FockState out = run(psi0.cutoffs);
  if (out.leakage <= kLeakageBudget) return out;

  std::vector<int> doubled = psi0.cutoffs;
  for (int& c : doubled) c *= 2;
  out = run(doubled);
  if (out.leakage <= kLeakageBudget) return out;
  throw LeakageExceeded("boundary probability " + std::to_string(out.leakage) +
                        " after doubling cutoffs");
}

Eigen::VectorXcd apply_annihilation(const FockBasis& basis,
                                    const Eigen::VectorXcd& psi, int mode) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(basis.dim);
  const int stride = basis.strides[mode];
  const int period = basis.cutoffs[mode] + 1;
  for (int idx = 0; idx < basis.dim; ++idx) {
    const int occ = (idx / stride) % period;
    if (occ > 0 && psi(idx) != 0.0) {
      out(idx - stride) += std::sqrt(double(occ)) * psi(idx);
    }
  }
  return out;
}

Eigen::VectorXcd apply_creation(const FockBasis& basis,
                                const Eigen::VectorXcd& psi, int mode) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(basis.dim);
  const int stride = basis.strides[mode];
  const int period = basis.cutoffs[mode] + 1;
  for (int idx = 0; idx < basis.dim; ++idx) {
    const int occ = (idx / stride) % period;
    if (occ < basis.cutoffs[mode] && psi(idx) != 0.0) {
      out(idx + stride) += std::sqrt(double(occ + 1)) * psi(idx);
    }
  }
  return out;
}

double number_expectation(const FockBasis& basis, const Eigen::VectorXcd& psi,
                          int mode) {
  const int stride = basis.strides[mode];
  const int period = basis.cutoffs[mode] + 1;
  double total = 0.0;
  for (int idx = 0; idx < basis.dim; ++idx) {
    total += double((idx / stride) % period) * std::norm(psi(idx));
  }
  return total;
}

FockState hom_output_state(double xi, double t) {
  FockState st{{3, 3}, Eigen::VectorXcd::Zero(16), 0.0};
  const FockBasis basis(st.cutoffs);
  const double angle = 2.0 * xi * t;
  const complex<double> pair_amp{0.0, std::sin(angle) / std::numbers::sqrt2};
  st.amplitudes(basis.index({1, 1})) = std::cos(angle);
  st.amplitudes(basis.index({2, 0})) = pair_amp;
  st.amplitudes(basis.index({0, 2})) = pair_amp;
  return st;
}

}  // namespace ctl
