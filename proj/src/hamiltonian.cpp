#include "ctl/hamiltonian.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "ctl/constants.hpp"
#include "ctl/errors.hpp"

namespace ctl {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};

struct ModeData {
  complex<double> alpha;  // flux bracket of the mode, phase included
  double weight;          // normalization factor applied per operator
  Line line;
};

// alpha_L = exp(i k dx)/sqrt(C_l omega), alpha_R = -exp(i p dx)/sqrt(C_r
// upsilon); k dx = p dx = 2 pi j / N on both lines.
std::vector<ModeData> mode_table(const CircuitParams& p,
                                 const std::vector<ModeIndex>& modes,
                                 Normalization norm) {
  p.validate();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    for (std::size_t j = i + 1; j < modes.size(); ++j) {
      if (modes[i] == modes[j]) {
        throw std::invalid_argument("duplicate mode in mode list");
      }
    }
  }
  std::vector<ModeData> table;
  table.reserve(modes.size());
  for (const ModeIndex& m : modes) {
    const double s = half_cell_sine(m.j, p);
    const complex<double> phase =
        std::exp(kI * (2.0 * std::numbers::pi * m.j / p.n_cells));
    if (m.line == Line::Left) {
      table.push_back({phase / std::sqrt(p.c_left * omega_bare(m.j, p)),
                       norm == Normalization::Canonical ? 1.0 / (2.0 * s) : 1.0,
                       Line::Left});
    } else {
      table.push_back({-phase / std::sqrt(p.c_right * upsilon_bare(m.j, p)),
                       1.0, Line::Right});
    }
  }
  return table;
}

// 2*chi_0 = hbar * squid_prefactor / N, the static coefficient every
// interaction monomial shares before mode brackets.
double two_chi0(const CircuitParams& p) {
  return constants::hbar * p.squid_prefactor() / p.n_cells;
}

}  // namespace

void QuadraticHamiltonian::validate(double tol) const {
  const auto n = static_cast<Eigen::Index>(modes.size());
  if (hopping_matrix.rows() != n || hopping_matrix.cols() != n ||
      pairing_matrix.rows() != n || pairing_matrix.cols() != n ||
      diagonal_shift.size() != n) {
    throw std::logic_error("quadratic Hamiltonian shape mismatch");
  }
  if (n == 0) return;
  double scale = std::max(
      {hopping_matrix.cwiseAbs().maxCoeff(), pairing_matrix.cwiseAbs().maxCoeff(),
       diagonal_shift.cwiseAbs().maxCoeff(), 1e-300});
  if ((hopping_matrix - hopping_matrix.adjoint()).cwiseAbs().maxCoeff() >
      tol * scale) {
    throw std::logic_error("hopping matrix not Hermitian");
  }
  if ((pairing_matrix - pairing_matrix.transpose()).cwiseAbs().maxCoeff() >
      tol * scale) {
    throw std::logic_error("pairing matrix not symmetric");
  }
}

QuadraticHamiltonian& QuadraticHamiltonian::operator+=(
    const QuadraticHamiltonian& other) {
  if (modes != other.modes) {
    throw std::invalid_argument("cannot add Hamiltonians over different modes");
  }
  hopping_matrix += other.hopping_matrix;
  pairing_matrix += other.pairing_matrix;
  diagonal_shift += other.diagonal_shift;
  if (time_tag != other.time_tag) time_tag.reset();
  return *this;
}

QuadraticHamiltonian zero_hamiltonian(std::vector<ModeIndex> modes) {
  const auto n = static_cast<Eigen::Index>(modes.size());
  return {std::move(modes), Eigen::MatrixXcd::Zero(n, n),
          Eigen::MatrixXcd::Zero(n, n), Eigen::VectorXd::Zero(n),
          std::nullopt};
}

QuadraticHamiltonian free_term(const CircuitParams& p,
                               const std::vector<ModeIndex>& modes,
                               Normalization norm) {
  const auto table = mode_table(p, modes, norm);
  QuadraticHamiltonian h = zero_hamiltonian(modes);
  for (int i = 0; i < h.size(); ++i) {
    // Raw left weight is epsilon_j = 4 hbar omega sin^2; the canonical
    // factor 1/(2 sin)^2 collapses it back to hbar omega.
    const double raw = modes[i].line == Line::Left
                           ? epsilon_bare(modes[i].j, p)
                           : constants::hbar * upsilon_bare(modes[i].j, p);
    h.diagonal_shift(i) = raw * table[i].weight * table[i].weight;
  }
  return h;
}

QuadraticHamiltonian energy_shift_term(const CircuitParams& p,
                                       const std::vector<ModeIndex>& modes,
                                       Normalization norm) {
  const auto table = mode_table(p, modes, norm);
  const double c = two_chi0(p);
  QuadraticHamiltonian h = zero_hamiltonian(modes);
  for (int i = 0; i < h.size(); ++i) {
    h.diagonal_shift(i) =
        c * std::norm(table[i].alpha) * table[i].weight * table[i].weight;
  }
  return h;
}

QuadraticHamiltonian hopping_term(const CircuitParams& p,
                                  const std::vector<ModeIndex>& modes,
                                  Normalization norm) {
  const auto table = mode_table(p, modes, norm);
  const double c = two_chi0(p);
  QuadraticHamiltonian h = zero_hamiltonian(modes);
  for (int i = 0; i < h.size(); ++i) {
    if (table[i].line != Line::Left) continue;
    for (int j = 0; j < h.size(); ++j) {
      if (table[j].line != Line::Right) continue;
      const complex<double> v = c * std::conj(table[i].alpha) *
                                table[j].alpha * table[i].weight *
                                table[j].weight;
      h.hopping_matrix(i, j) = v;
      h.hopping_matrix(j, i) = std::conj(v);
    }
  }
  return h;
}

QuadraticHamiltonian raman_internal_term(const CircuitParams& p,
                                         const std::vector<ModeIndex>& modes,
                                         Normalization norm) {
  const auto table = mode_table(p, modes, norm);
  const double c = two_chi0(p);
  QuadraticHamiltonian h = zero_hamiltonian(modes);
  for (int i = 0; i < h.size(); ++i) {
    for (int j = 0; j < h.size(); ++j) {
      if (i == j || table[i].line != table[j].line) continue;
      h.hopping_matrix(i, j) = c * std::conj(table[i].alpha) * table[j].alpha *
                               table[i].weight * table[j].weight;
    }
  }
  return h;
}

QuadraticHamiltonian single_mode_squeeze_term(
    const CircuitParams& p, const std::vector<ModeIndex>& modes,
    Normalization norm) {
  const auto table = mode_table(p, modes, norm);
  const double c = 0.5 * two_chi0(p);
  QuadraticHamiltonian h = zero_hamiltonian(modes);
  for (int i = 0; i < h.size(); ++i) {
    h.pairing_matrix(i, i) =
        c * table[i].alpha * table[i].alpha * table[i].weight * table[i].weight;
  }
  return h;
}

QuadraticHamiltonian two_mode_squeeze_internal_term(
    const CircuitParams& p, const std::vector<ModeIndex>& modes,
    Normalization norm) {
  const auto table = mode_table(p, modes, norm);
  const double c = two_chi0(p);
  QuadraticHamiltonian h = zero_hamiltonian(modes);
  for (int i = 0; i < h.size(); ++i) {
    for (int j = i + 1; j < h.size(); ++j) {
      if (table[i].line != table[j].line) continue;
      const complex<double> v = c * table[i].alpha * table[j].alpha *
                                table[i].weight * table[j].weight;
      h.pairing_matrix(i, j) = v;
      h.pairing_matrix(j, i) = v;
    }
  }
  return h;
}

QuadraticHamiltonian interline_squeeze_term(const CircuitParams& p,
                                            const std::vector<ModeIndex>& modes,
                                            Normalization norm) {
  const auto table = mode_table(p, modes, norm);
  const double c = two_chi0(p);
  QuadraticHamiltonian h = zero_hamiltonian(modes);
  for (int i = 0; i < h.size(); ++i) {
    if (table[i].line != Line::Left) continue;
    for (int j = 0; j < h.size(); ++j) {
      if (table[j].line != Line::Right) continue;
      const complex<double> v = c * table[i].alpha * table[j].alpha *
                                table[i].weight * table[j].weight;
      h.pairing_matrix(i, j) = v;
      h.pairing_matrix(j, i) = v;
    }
  }
  return h;
}

QuadraticHamiltonian full_interaction(const CircuitParams& p,
                                      const std::vector<ModeIndex>& modes,
                                      Normalization norm) {
  QuadraticHamiltonian h = energy_shift_term(p, modes, norm);
  h += hopping_term(p, modes, norm);
  h += raman_internal_term(p, modes, norm);
  h += single_mode_squeeze_term(p, modes, norm);
  h += two_mode_squeeze_internal_term(p, modes, norm);
  h += interline_squeeze_term(p, modes, norm);
  return h;
}

double term_scale(const TimedTerm& term, double t) {
  double s = term.const_coeff;
  for (const DriveTone& tone : term.tones) {
    s += tone.eps * std::sin(tone.omega * t) +
         tone.kappa * std::cos(tone.omega * t);
  }
  return s;
}

std::vector<TimedTerm> driven_interaction(const CircuitParams& p,
                                          const DriveSpec& drive,
                                          const std::vector<ModeIndex>& modes,
                                          Normalization norm) {
  p.validate();
  const double e0 = p.josephson_energy();
  // The six faces are built at the params' static energy; the envelope
  // rescales them to the drive's E(t).
  const double factor = e0 > 0.0 ? drive.e0 / e0 : (drive.e0 == 0.0 ? 1.0 : 0.0);
  if (e0 == 0.0 && drive.e0 != 0.0) {
    throw std::invalid_argument(
        "drive carries energy but the junction is off (i_crit = 0)");
  }
  std::vector<TimedTerm> out;
  out.push_back({free_term(p, modes, norm), 1.0, {}});
  TimedTerm inter{full_interaction(p, modes, norm), factor, {}};
  for (const DriveTone& tone : drive.tones) {
    inter.tones.push_back({tone.eps * factor, tone.kappa * factor, tone.omega});
  }
  out.push_back(std::move(inter));
  return out;
}

namespace {

// Amplitude of the drive tone closest to the target frequency; zero with no
// tones. Raman targets use |gap| so a single tone serves every coupling it
// is near.
double amplitude_near(const DriveSpec& drive, double target) {
  const DriveTone* best = nullptr;
  double best_gap = 0.0;
  for (const DriveTone& tone : drive.tones) {
    const double gap = std::abs(tone.omega - target);
    if (best == nullptr || gap < best_gap) {
      best = &tone;
      best_gap = gap;
    }
  }
  return best ? std::hypot(best->eps, best->kappa) : 0.0;
}

}  // namespace

CouplingConstants effective_couplings(const ModeIndex& left,
                                      const ModeIndex& right,
                                      const DriveSpec& drive,
                                      const CircuitParams& p,
                                      FrequencyChoice choice) {
  p.validate();
  if (left.line != Line::Left || right.line != Line::Right) {
    throw std::invalid_argument("effective_couplings needs a left-right pair");
  }
  const bool corrected = choice == FrequencyChoice::Corrected;
  const double w =
      corrected ? omega_corrected(left.j, p) : omega_bare(left.j, p);
  const double u =
      corrected ? upsilon_corrected(right.j, p) : upsilon_bare(right.j, p);
  const double pre = p.squid_prefactor() / p.n_cells;

  CouplingConstants c;
  c.g = -pre / std::sqrt(p.c_left * p.c_right * w * u);
  c.xi_hp = 2.0 * c.g;
  c.xi_rm = amplitude_near(drive, std::abs(w - u)) * c.g;
  c.xi_sq = amplitude_near(drive, w + u) * c.g;
  c.xi_sl = -amplitude_near(drive, 2.0 * w) * pre / (p.c_left * w);
  c.xi_sr = -amplitude_near(drive, 2.0 * u) * pre / (p.c_right * u);
  return c;
}

QuadraticHamiltonian rwa_effective_hamiltonian(const ResonanceSpec& res,
                                               const DriveSpec& drive,
                                               const CircuitParams& p,
                                               std::optional<double> tol) {
  const double fl = mode_freq_corrected(res.mode_left, p);
  const double fr = mode_freq_corrected(res.mode_right, p);
  const double tol_eff = tol.value_or(default_resonance_tol(fl, fr));
  if (std::abs(res.detuning) > tol_eff) {
    throw DetuningTooLarge("resonance residual " + std::to_string(res.detuning) +
                           " rad/s exceeds tolerance");
  }
  const double hb = constants::hbar;

  const bool single = res.mode_left == res.mode_right;
  if (single) {
    const double f = fl;
    const double amp = amplitude_near(drive, 2.0 * f);
    const double cap = res.mode_left.line == Line::Left ? p.c_left : p.c_right;
    const double xi = -amp * p.squid_prefactor() / (p.n_cells * cap * f);
    QuadraticHamiltonian h = zero_hamiltonian({res.mode_left});
    switch (res.kind) {
      case ResonanceKind::SingleModeSqueezeL:
      case ResonanceKind::SingleModeSqueezeR:
        h.pairing_matrix(0, 0) = hb * xi;
        return h;
      default:
        throw UnsupportedResonance("single-mode resonance of non-squeeze kind");
    }
  }

  const CouplingConstants c =
      effective_couplings(res.mode_left, res.mode_right, drive, p);
  QuadraticHamiltonian h = zero_hamiltonian({res.mode_left, res.mode_right});
  switch (res.kind) {
    case ResonanceKind::DegenerateHopping:
      h.hopping_matrix(0, 1) = hb * c.xi_hp;
      h.hopping_matrix(1, 0) = hb * c.xi_hp;
      return h;
    case ResonanceKind::RamanLtoR:
    case ResonanceKind::RamanRtoL:
      h.hopping_matrix(0, 1) = hb * c.xi_rm;
      h.hopping_matrix(1, 0) = hb * c.xi_rm;
      return h;
    case ResonanceKind::TwoModeSqueeze:
      h.pairing_matrix(0, 1) = hb * c.xi_sq;
      h.pairing_matrix(1, 0) = hb * c.xi_sq;
      return h;
    case ResonanceKind::GeneralLinearDegenerate:
      h.hopping_matrix(0, 1) = hb * c.xi_hp;
      h.hopping_matrix(1, 0) = hb * c.xi_hp;
      h.pairing_matrix(0, 1) = hb * c.xi_sq;
      h.pairing_matrix(1, 0) = hb * c.xi_sq;
      h.pairing_matrix(0, 0) = hb * c.xi_sl;
      h.pairing_matrix(1, 1) = hb * c.xi_sr;
      return h;
    case ResonanceKind::PositionPositionNondegenerate:
      h.hopping_matrix(0, 1) = hb * c.xi_rm;
      h.hopping_matrix(1, 0) = hb * c.xi_rm;
      h.pairing_matrix(0, 1) = hb * c.xi_sq;
      h.pairing_matrix(1, 0) = hb * c.xi_sq;
      return h;
    default:
      throw UnsupportedResonance("pair resonance of single-mode kind");
  }
}

QuadraticHamiltonian rwa_effective_hamiltonian(
    const std::vector<ResonanceSpec>& specs, const DriveSpec& drive,
    const CircuitParams& p, std::optional<double> tol) {
  if (specs.empty()) {
    throw std::invalid_argument("no resonances to assemble");
  }
  std::vector<ModeIndex> union_modes;
  auto index_of = [&](const ModeIndex& m) {
    for (std::size_t i = 0; i < union_modes.size(); ++i) {
      if (union_modes[i] == m) return static_cast<int>(i);
    }
    union_modes.push_back(m);
    return static_cast<int>(union_modes.size() - 1);
  };
  for (const ResonanceSpec& s : specs) {
    index_of(s.mode_left);
    index_of(s.mode_right);
  }

  QuadraticHamiltonian total = zero_hamiltonian(union_modes);
  for (const ResonanceSpec& s : specs) {
    const QuadraticHamiltonian part = rwa_effective_hamiltonian(s, drive, p, tol);
    std::vector<int> map(part.modes.size());
    for (std::size_t i = 0; i < part.modes.size(); ++i) {
      map[i] = index_of(part.modes[i]);
    }
    for (int i = 0; i < part.size(); ++i) {
      total.diagonal_shift(map[i]) += part.diagonal_shift(i);
      for (int j = 0; j < part.size(); ++j) {
        total.hopping_matrix(map[i], map[j]) += part.hopping_matrix(i, j);
        total.pairing_matrix(map[i], map[j]) += part.pairing_matrix(i, j);
      }
    }
  }
  total.validate();
  return total;
}

QuadraticHamiltonian rwa_filter(const std::vector<TimedTerm>& terms,
                                double tol) {
  if (terms.empty()) {
    throw std::invalid_argument("rwa_filter needs at least one term");
  }
  const std::vector<ModeIndex>& modes = terms[0].h.modes;
  for (const TimedTerm& term : terms) {
    term.h.validate();
    if (term.h.modes != modes) {
      throw std::invalid_argument("rwa_filter terms span different modes");
    }
  }
  const int n = static_cast<int>(modes.size());
  const double hb = constants::hbar;

  // Frame frequencies: static part of the full diagonal, free plus shifts.
  Eigen::VectorXd frame = Eigen::VectorXd::Zero(n);
  for (const TimedTerm& term : terms) {
    for (int i = 0; i < n; ++i) {
      frame(i) += term.const_coeff * (std::real(term.h.hopping_matrix(i, i)) +
                                      term.h.diagonal_shift(i)) /
                  hb;
    }
  }

  struct Component {
    double freq;
    complex<double> amp;
    bool is_static;
  };

  Eigen::MatrixXcd m_eff = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd p_eff = Eigen::MatrixXcd::Zero(n, n);

  for (const TimedTerm& term : terms) {
    std::vector<Component> comps;
    comps.push_back({0.0, term.const_coeff, true});
    for (const DriveTone& tone : term.tones) {
      // eps*sin + kappa*cos = (kappa - i eps)/2 e^{+i w t} + c.c. sideband
      comps.push_back({tone.omega, 0.5 * complex<double>(tone.kappa, -tone.eps),
                       false});
      comps.push_back({-tone.omega, 0.5 * complex<double>(tone.kappa, tone.eps),
                       false});
    }

    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        complex<double> entry = term.h.hopping_matrix(i, j);
        if (i == j) entry += term.h.diagonal_shift(i);
        if (entry == 0.0) continue;
        const double base = frame(i) - frame(j);
        for (const Component& c : comps) {
          if (i == j && c.is_static) continue;  // defines the frame itself
          if (std::abs(base + c.freq) <= tol) m_eff(i, j) += c.amp * entry;
        }
      }
    }

    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const complex<double> entry = term.h.pairing_matrix(i, j);
        if (entry == 0.0) continue;
        const double base = -(frame(i) + frame(j));
        for (const Component& c : comps) {
          if (std::abs(base + c.freq) <= tol) p_eff(i, j) += c.amp * entry;
        }
        p_eff(j, i) = p_eff(i, j);
      }
    }
  }

  QuadraticHamiltonian out{modes, std::move(m_eff), std::move(p_eff),
                           Eigen::VectorXd::Zero(n), std::nullopt};
  out.validate(1e-12);
  return out;
}

}  // namespace ctl
