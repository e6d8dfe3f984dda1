#include "ctl/correlations.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "ctl/constants.hpp"
#include "ctl/errors.hpp"

namespace ctl {

namespace {

using std::complex;

CorrelationResult pack(double moment, double intensity_1, double intensity_2,
                       const PrefactorContext& ctx) {
  CorrelationResult r;
  r.prefactor = ctx.pre_left * ctx.pre_right;
  r.g2_unnormalized = r.prefactor * moment;
  r.g1_left = ctx.pre_left * intensity_1;
  r.g1_right = ctx.pre_right * intensity_2;
  if (intensity_1 > 0.0 && intensity_2 > 0.0) {
    // Prefactors cancel between numerator and the two intensities.
    r.g2_normalized = moment / (intensity_1 * intensity_2);
  }
  return r;
}

void check_occupancies(int s_left, int s_right) {
  if (s_left < 0 || s_right < 0) {
    throw std::invalid_argument("negative input occupancy");
  }
}

// Coefficient vector of a detector operator over (a_1..a_n, a_1+..a_n+).
struct LadderOp {
  Eigen::VectorXcd coef;
  int n = 0;
};

LadderOp detector_op(const BogoliubovTransform& bt, int row) {
  LadderOp op;
  op.n = bt.size();
  op.coef.resize(2 * op.n);
  op.coef.head(op.n) = bt.total_a().row(row).transpose();
  op.coef.tail(op.n) = bt.total_b().row(row).transpose();
  return op;
}

LadderOp dagger(const LadderOp& op) {
  LadderOp out;
  out.n = op.n;
  out.coef.resize(2 * op.n);
  out.coef.head(op.n) = op.coef.tail(op.n).conjugate();
  out.coef.tail(op.n) = op.coef.head(op.n).conjugate();
  return out;
}

// Unsymmetrized second moments <xi_alpha xi_beta> of the ladder vector
// (a_1..a_n, a_1+..a_n+) for a zero-mean Gaussian state.
Eigen::MatrixXcd ladder_moments(const GaussianState& st) {
  const int n = st.n_modes();
  const auto& s = st.covariance;
  Eigen::MatrixXcd mom(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const int xi = 2 * i, pi = 2 * i + 1;
    for (int j = 0; j < n; ++j) {
      const int xj = 2 * j, pj = 2 * j + 1;
      const complex<double> aa{0.5 * (s(xi, xj) - s(pi, pj)),
                               0.5 * (s(xi, pj) + s(pi, xj))};
      const complex<double> a_adag{0.5 * (s(xi, xj) + s(pi, pj)),
                                   0.5 * (s(pi, xj) - s(xi, pj))};
      const complex<double> adag_a{0.5 * (s(xi, xj) + s(pi, pj)),
                                   0.5 * (s(xi, pj) - s(pi, xj))};
      mom(i, j) = aa;
      mom(i, j + n) = a_adag + (i == j ? 0.5 : 0.0);
      mom(i + n, j) = adag_a - (i == j ? 0.5 : 0.0);
      mom(i + n, j + n) = std::conj(aa);
    }
  }
  return mom;
}

complex<double> pair_moment(const LadderOp& x, const LadderOp& y,
                            const Eigen::MatrixXcd& mom) {
  return x.coef.transpose() * mom * y.coef;
}

Eigen::VectorXcd apply_op(const LadderOp& op, const FockBasis& basis,
                          const Eigen::VectorXcd& psi) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(basis.dim);
  for (int k = 0; k < op.n; ++k) {
    if (op.coef(k) != 0.0) out += op.coef(k) * apply_annihilation(basis, psi, k);
    if (op.coef(k + op.n) != 0.0) {
      out += op.coef(k + op.n) * apply_creation(basis, psi, k);
    }
  }
  return out;
}

double real_checked(complex<double> v, const char* what) {
  if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real()))) {
    throw std::logic_error(std::string(what) + " acquired an imaginary part");
  }
  return v.real();
}

}  // namespace

PrefactorContext correlation_prefactor(const ModeIndex& left,
                                       const ModeIndex& right,
                                       const CircuitParams& p,
                                       FrequencyChoice choice) {
  p.validate();
  if (left.line != Line::Left || right.line != Line::Right) {
    throw std::invalid_argument("correlation_prefactor needs a left-right pair");
  }
  const bool corrected = choice == FrequencyChoice::Corrected;
  const double w =
      corrected ? omega_corrected(left.j, p) : omega_bare(left.j, p);
  const double u =
      corrected ? upsilon_corrected(right.j, p) : upsilon_bare(right.j, p);
  return {constants::hbar / (p.n_cells * p.c_left * w),
          constants::hbar / (p.n_cells * p.c_right * u)};
}

CorrelationResult g2_hopping_raman_fock(int s_left, int s_right, double xi,
                                        double t1, double t2,
                                        const PrefactorContext& ctx) {
  check_occupancies(s_left, s_right);
  const double m = s_left, n = s_right;
  const double c1 = std::cos(xi * t1), s1 = std::sin(xi * t1);
  const double c2 = std::cos(xi * t2), s2 = std::sin(xi * t2);
  const double cross = c1 * c2 - s1 * s2;
  const double moment = m * n * cross * cross +
                        m * (m - 1.0) * c1 * c1 * s2 * s2 +
                        n * (n - 1.0) * s1 * s1 * c2 * c2;
  const double i1 = m * c1 * c1 + n * s1 * s1;
  const double i2 = n * c2 * c2 + m * s2 * s2;
  return pack(moment, i1, i2, ctx);
}

CorrelationResult g2_squeeze_fock(int s_left, int s_right, double xi,
                                  double t1, double t2,
                                  const PrefactorContext& ctx) {
  check_occupancies(s_left, s_right);
  const double m = s_left, n = s_right;
  const double c1 = std::cosh(xi * t1), s1 = std::sinh(xi * t1);
  const double c2 = std::cosh(xi * t2), s2 = std::sinh(xi * t2);
  const double moment =
      m * n * c1 * c1 * c2 * c2 + (m + 1.0) * (n + 1.0) * s1 * s1 * s2 * s2 +
      s1 * s2 * c1 * c2 * (m * n + (m + 1.0) * (n + 1.0)) +
      m * (m + 1.0) * c1 * c1 * s2 * s2 + n * (n + 1.0) * s1 * s1 * c2 * c2;
  const double i1 = m * c1 * c1 + (n + 1.0) * s1 * s1;
  const double i2 = n * c2 * c2 + (m + 1.0) * s2 * s2;
  return pack(moment, i1, i2, ctx);
}

double hom_dip(double xi) {
  if (xi == 0.0) {
    throw NoInteraction("no conversion, the interference dip does not exist");
  }
  return std::numbers::pi / (4.0 * std::abs(xi));
}

CorrelationResult g2_generic(const CorrelationInput& input,
                             const BogoliubovTransform& at_t1,
                             const BogoliubovTransform& at_t2,
                             const PrefactorContext& ctx) {
  if (at_t1.size() != 2 || at_t2.size() != 2) {
    throw std::invalid_argument("g2_generic expects two-mode transforms");
  }
  const LadderOp u = detector_op(at_t1, 0);
  const LadderOp v = detector_op(at_t2, 1);

  if (const auto* gauss = std::get_if<GaussianState>(&input)) {
    if (gauss->n_modes() != 2) {
      throw std::invalid_argument("g2_generic expects a two-mode state");
    }
    if (gauss->mean.cwiseAbs().maxCoeff() != 0.0) {
      throw std::invalid_argument("Wick contraction requires zero mean");
    }
    const Eigen::MatrixXcd mom = ladder_moments(*gauss);
    const LadderOp ud = dagger(u);
    const LadderOp vd = dagger(v);
    // Isserlis over the string u+ v+ u v with the order kept inside each
    // pairing; same operator string as the Fock branch below.
    const complex<double> g2c = pair_moment(ud, vd, mom) * pair_moment(u, v, mom) +
                                pair_moment(ud, u, mom) * pair_moment(vd, v, mom) +
                                pair_moment(ud, v, mom) * pair_moment(vd, u, mom);
    const double i1 = real_checked(pair_moment(ud, u, mom), "left intensity");
    const double i2 = real_checked(pair_moment(vd, v, mom), "right intensity");
    return pack(real_checked(g2c, "correlator"), i1, i2, ctx);
  }

  const auto& fock = std::get<FockState>(input);
  if (static_cast<int>(fock.cutoffs.size()) != 2) {
    throw std::invalid_argument("g2_generic expects a two-mode state");
  }
  const FockBasis basis(fock.cutoffs);
  const Eigen::VectorXcd u_psi = apply_op(u, basis, fock.amplitudes);
  const Eigen::VectorXcd v_psi = apply_op(v, basis, fock.amplitudes);
  const Eigen::VectorXcd right = apply_op(u, basis, v_psi);
  const Eigen::VectorXcd left = apply_op(v, basis, u_psi);
  const double moment = real_checked(left.dot(right), "correlator");
  return pack(moment, u_psi.squaredNorm(), v_psi.squaredNorm(), ctx);
}

double g1(Line which, const CorrelationInput& input,
          const BogoliubovTransform& at_t, const PrefactorContext& ctx) {
  const int row = which == Line::Left ? 0 : 1;
  const double pre = which == Line::Left ? ctx.pre_left : ctx.pre_right;
  const LadderOp op = detector_op(at_t, row);

  if (const auto* gauss = std::get_if<GaussianState>(&input)) {
    if (gauss->mean.cwiseAbs().maxCoeff() != 0.0) {
      throw std::invalid_argument("Wick contraction requires zero mean");
    }
    const Eigen::MatrixXcd mom = ladder_moments(*gauss);
    return pre * real_checked(pair_moment(dagger(op), op, mom), "intensity");
  }
  const auto& fock = std::get<FockState>(input);
  const FockBasis basis(fock.cutoffs);
  return pre * apply_op(op, basis, fock.amplitudes).squaredNorm();
}

}  // namespace ctl
