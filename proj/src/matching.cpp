#include "ctl/matching.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ctl/errors.hpp"

namespace ctl {

namespace {

// Residual of larger magnitude, sign kept.
double worst_residual(double a, double b) {
  return std::abs(a) >= std::abs(b) ? a : b;
}

}  // namespace

const char* to_string(ResonanceKind kind) {
  switch (kind) {
    case ResonanceKind::DegenerateHopping: return "degenerate_hopping";
    case ResonanceKind::RamanLtoR: return "raman_l_to_r";
    case ResonanceKind::RamanRtoL: return "raman_r_to_l";
    case ResonanceKind::TwoModeSqueeze: return "two_mode_squeeze";
    case ResonanceKind::SingleModeSqueezeL: return "single_mode_squeeze_l";
    case ResonanceKind::SingleModeSqueezeR: return "single_mode_squeeze_r";
    case ResonanceKind::GeneralLinearDegenerate:
      return "general_linear_degenerate";
    case ResonanceKind::PositionPositionNondegenerate:
      return "position_position_nondegenerate";
  }
  return "unknown";
}

double default_resonance_tol(double freq_a, double freq_b) {
  return 1e-6 * std::max(std::abs(freq_a), std::abs(freq_b));
}

CrSolveResult solve_cr_for_degeneracy_report(int j, const CircuitParams& p,
                                             std::pair<double, double> bracket) {
  p.validate();
  const double target = omega_corrected(j, p);
  auto upsilon_at = [&](double c) {
    CircuitParams q = p;
    q.c_right = c;
    return upsilon_corrected(j, q);
  };

  double lo = bracket.first;
  double hi = bracket.second;
  if (!(lo > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("bracket must satisfy 0 < lo < hi");
  }
  double f_lo = upsilon_at(lo) - target;
  double f_hi = upsilon_at(hi) - target;
  // upsilon~ falls off as C^(-1/2), so a straddling bracket has f_lo >= 0 >= f_hi.
  if (f_lo < 0.0 || f_hi > 0.0) {
    throw NoRootInBracket("upsilon~_" + std::to_string(j) +
                          " - omega~ does not change sign on the bracket");
  }

  int iterations = 0;
  const double slack = 1e-9 * target;
  while (hi - lo > 1e-6 * lo) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = upsilon_at(mid) - target;
    if (f_mid > f_lo + slack || f_mid < f_hi - slack) {
      throw std::logic_error("upsilon~(C) not monotone on the bracket");
    }
    if (f_mid >= 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
    ++iterations;
  }

  double c = 0.5 * (lo + hi);
  for (int k = 0; k < 12; ++k) {
    const double u = upsilon_at(c);
    const double f = u - target;
    if (std::abs(f) <= 1e-13 * target) break;
    // d(upsilon~)/dC = -upsilon~/(2C), exact for the global C^(-1/2) profile.
    c += 2.0 * c * f / u;
    ++iterations;
  }

  const double residual = std::abs(upsilon_at(c) - target) / target;
  if (!(residual <= 1e-12)) {
    throw std::runtime_error("degeneracy solve stalled at relative residual " +
                             std::to_string(residual));
  }
  return {c, residual, iterations};
}

double solve_cr_for_degeneracy(int j, const CircuitParams& p,
                               std::pair<double, double> bracket) {
  return solve_cr_for_degeneracy_report(j, p, bracket).c_r;
}

double raman_drive(int j_left, int j_right, const CircuitParams& p) {
  return omega_corrected(j_left, p) - upsilon_corrected(j_right, p);
}

double squeeze_drive(int j_left, int j_right, const CircuitParams& p) {
  return omega_corrected(j_left, p) + upsilon_corrected(j_right, p);
}

std::vector<ResonanceSpec> classify_resonances(
    const DriveSpec& drive, const CircuitParams& p,
    const std::vector<ModeIndex>& mode_set, std::optional<double> tol_opt) {
  p.validate();
  const int n_tones = static_cast<int>(drive.tones.size());
  std::vector<ResonanceSpec> out;

  for (const ModeIndex& ml : mode_set) {
    if (ml.line != Line::Left) continue;
    const double w = omega_corrected(ml.j, p);
    for (const ModeIndex& mr : mode_set) {
      if (mr.line != Line::Right) continue;
      const double u = upsilon_corrected(mr.j, p);
      const double tol = tol_opt.value_or(default_resonance_tol(w, u));
      const double gap = w - u;
      const double sum = w + u;

      if (ml.j == mr.j) {
        if (std::abs(gap) <= tol) {
          out.push_back({ResonanceKind::DegenerateHopping, ml, mr,
                         std::nullopt, gap});
        }
        for (int m = 0; m < n_tones; ++m) {
          const double res = drive.tones[m].omega - std::abs(gap);
          if (std::abs(res) <= tol) {
            out.push_back({gap >= 0.0 ? ResonanceKind::RamanLtoR
                                      : ResonanceKind::RamanRtoL,
                           ml, mr, m, res});
          }
        }
      }

      if (ml.j == -mr.j) {
        for (int m = 0; m < n_tones; ++m) {
          const double res = drive.tones[m].omega - sum;
          if (std::abs(res) <= tol) {
            out.push_back({ResonanceKind::TwoModeSqueeze, ml, mr, m, res});
          }
        }
      }

      if (std::abs(gap) <= tol) {
        for (int m = 0; m < n_tones; ++m) {
          const double res = drive.tones[m].omega - sum;
          if (std::abs(res) <= tol) {
            out.push_back({ResonanceKind::GeneralLinearDegenerate, ml, mr, m,
                           worst_residual(gap, res)});
          }
        }
      }

      for (int m1 = 0; m1 < n_tones; ++m1) {
        const double res_conv = drive.tones[m1].omega - std::abs(gap);
        if (std::abs(res_conv) > tol) continue;
        for (int m2 = 0; m2 < n_tones; ++m2) {
          if (m2 == m1) continue;
          const double res_sq = drive.tones[m2].omega - sum;
          if (std::abs(res_sq) <= tol) {
            out.push_back({ResonanceKind::PositionPositionNondegenerate, ml,
                           mr, m2, worst_residual(res_conv, res_sq)});
          }
        }
      }
    }
  }

  for (const ModeIndex& mode : mode_set) {
    const double f = mode_freq_corrected(mode, p);
    const double tol = tol_opt.value_or(default_resonance_tol(f, f));
    for (int m = 0; m < n_tones; ++m) {
      const double res = drive.tones[m].omega - 2.0 * f;
      if (std::abs(res) <= tol) {
        out.push_back({mode.line == Line::Left
                           ? ResonanceKind::SingleModeSqueezeL
                           : ResonanceKind::SingleModeSqueezeR,
                       mode, mode, m, res});
      }
    }
  }

  return out;
}

}  // namespace ctl
