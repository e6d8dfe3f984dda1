#pragma once

#include <optional>
#include <variant>

#include "ctl/circuit.hpp"
#include "ctl/dynamics.hpp"
#include "ctl/fock.hpp"

namespace ctl {

// Field-amplitude weights restoring circuit units on the photon correlators:
// pre_left = hbar/(N C_l omega), pre_right = hbar/(N C_r upsilon). Unit
// weights (the default) give the bare counting statistics.
struct PrefactorContext {
  double pre_left = 1.0;
  double pre_right = 1.0;
};

PrefactorContext correlation_prefactor(
    const ModeIndex& left, const ModeIndex& right, const CircuitParams& p,
    FrequencyChoice choice = FrequencyChoice::Bare);

struct CorrelationResult {
  double g2_unnormalized = 0.0;         // prefactor included
  std::optional<double> g2_normalized;  // empty when either intensity is zero
  double prefactor = 1.0;               // pre_left * pre_right
  double g1_left = 0.0;                 // intensity at t1, pre_left included
  double g1_right = 0.0;                // intensity at t2, pre_right included
};

// Cross correlator <a+(t1) b+(t2) b(t2) a(t1)> for a |s_left, s_right>
// input under resonant conversion at rate xi (hopping and Raman share the
// interaction-picture flow). Evaluated in product form, finite at every t.
CorrelationResult g2_hopping_raman_fock(int s_left, int s_right, double xi,
                                        double t1, double t2,
                                        const PrefactorContext& ctx = {});

// Same correlator under resonant pair generation at rate xi.
CorrelationResult g2_squeeze_fock(int s_left, int s_right, double xi,
                                  double t1, double t2,
                                  const PrefactorContext& ctx = {});

// First zero of the normalized (1,1) conversion correlator, pi/(4|xi|).
// Throws NoInteraction at xi = 0.
double hom_dip(double xi);

// Generic two-time correlator for an arbitrary two-mode input and
// Bogoliubov evolutions to the two detection times (mode 0 feeds the left
// detector at t1, mode 1 the right at t2). Gaussian inputs go through the
// ordered Wick contraction and must have zero mean; Fock inputs through
// operator chains, and need cutoff headroom for any pair mixing in the
// transforms.
using CorrelationInput = std::variant<GaussianState, FockState>;
CorrelationResult g2_generic(const CorrelationInput& input,
                             const BogoliubovTransform& at_t1,
                             const BogoliubovTransform& at_t2,
                             const PrefactorContext& ctx = {});

// Intensity <a+(t) a(t)> of one side, prefactor included.
double g1(Line which, const CorrelationInput& input,
          const BogoliubovTransform& at_t, const PrefactorContext& ctx = {});

}  // namespace ctl
