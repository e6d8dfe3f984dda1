#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ctl/circuit.hpp"
#include "ctl/errors.hpp"
#include "ctl/matching.hpp"

using namespace ctl;

namespace {

CircuitParams reference_params(double c_r = 1.6e-12) {
  CircuitParams p;
  p.c_left = 0.4e-12;
  p.l_left = 60e-12;
  p.c_right = c_r;
  p.l_right = 60e-12;
  p.n_cells = 200;
  p.i_crit = 1.25e-6;
  return p;
}

// upsilon~(C) = A/sqrt(C) globally, so the degeneracy point has the closed
// form C* = (A/omega~)^2. Written out independently of the solver.
double matched_capacitance(int j, const CircuitParams& p) {
  const double s = half_cell_sine(j, p);
  const double a = 2.0 * s / std::sqrt(p.l_right) +
                   p.squid_prefactor() * std::sqrt(p.l_right) /
                       (2.0 * s * p.n_cells);
  const double w = omega_corrected(j, p);
  return (a / w) * (a / w);
}

}  // namespace

TEST_CASE("degeneracy solver agrees with the closed-form root") {
  CircuitParams p = reference_params();
  for (int j : {12, 30, 50, 100}) {
    const CrSolveResult r = solve_cr_for_degeneracy_report(j, p);
    CHECK(r.c_r ==
          doctest::Approx(matched_capacitance(j, p)).epsilon(1e-10));
    CHECK(r.residual <= 1e-12);
    CHECK(r.iterations > 0);

    CircuitParams q = p;
    q.c_right = r.c_r;
    CHECK(upsilon_corrected(j, q) ==
          doctest::Approx(omega_corrected(j, p)).epsilon(1e-12));
  }

  // Low mode numbers push the root below the default bracket; a wider one
  // still converges.
  const CrSolveResult low = solve_cr_for_degeneracy_report(7, p, {1e-17, 1e-9});
  CHECK(low.c_r == doctest::Approx(matched_capacitance(7, p)).epsilon(1e-10));
  CHECK(low.residual <= 1e-12);
}

TEST_CASE("matched capacitances reproduce the reference working points") {
  CircuitParams p = reference_params();
  CHECK(solve_cr_for_degeneracy(30, p) * 1e12 ==
        doctest::Approx(0.27).epsilon(0.005 / 0.27));
  CHECK(solve_cr_for_degeneracy(50, p) * 1e12 ==
        doctest::Approx(1.60).epsilon(0.005 / 1.60));
  CHECK(solve_cr_for_degeneracy(100, p) * 1e12 ==
        doctest::Approx(6.39).epsilon(0.005 / 6.39));

  // Full-precision regression against an independent evaluation.
  CHECK(solve_cr_for_degeneracy(30, p) ==
        doctest::Approx(2.720054072416551e-13).epsilon(1e-9));
  CHECK(solve_cr_for_degeneracy(50, p) ==
        doctest::Approx(1.5981794722107939e-12).epsilon(1e-9));
  CHECK(solve_cr_for_degeneracy(100, p) ==
        doctest::Approx(6.389078387737778e-12).epsilon(1e-9));
}

TEST_CASE("bare-junction matching recovers the algebraic root") {
  CircuitParams p = reference_params();
  p.i_crit = 0.0;
  // upsilon_50 = omega_50 collapses to C = 16 sin^4(pi/4) C_l L_l / L_r.
  CHECK(solve_cr_for_degeneracy(50, p) ==
        doctest::Approx(1.6e-12).epsilon(1e-11));
  const double s = half_cell_sine(30, p);
  CHECK(solve_cr_for_degeneracy(30, p) ==
        doctest::Approx(16.0 * s * s * s * s * p.c_left * p.l_left /
                        p.l_right)
            .epsilon(1e-11));
}

TEST_CASE("solver accepts narrow valid brackets and rejects bad ones") {
  CircuitParams p = reference_params();
  CHECK(solve_cr_for_degeneracy(100, p, {6e-12, 7e-12}) ==
        doctest::Approx(6.389078387737778e-12).epsilon(1e-9));

  CHECK_THROWS_AS(solve_cr_for_degeneracy(50, p, {1e-15, 1e-14}),
                  NoRootInBracket);
  CHECK_THROWS_AS(solve_cr_for_degeneracy(50, p, {1e-11, 1e-9}),
                  NoRootInBracket);
  CHECK_THROWS_AS(solve_cr_for_degeneracy(50, p, {0.0, 1e-9}),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_cr_for_degeneracy(50, p, {1e-9, 1e-15}),
                  std::invalid_argument);
}

TEST_CASE("conversion and generation tone frequencies") {
  CircuitParams p = reference_params();

  CHECK(raman_drive(30, 30, p) == doctest::Approx(132268689500.7148));
  CHECK(squeeze_drive(30, 30, p) == doctest::Approx(317865695968.13464));

  // At C_r = 1.60 pF the right band at j=50 sits above the left band at
  // j=100, so this conversion gap comes out mirrored.
  CHECK(raman_drive(100, 50, p) < 0.0);
  CHECK(raman_drive(100, 50, p) ==
        doctest::Approx(omega_corrected(100, p) - upsilon_corrected(50, p))
            .epsilon(1e-15));

  CHECK(squeeze_drive(100, 50, p) > 0.0);
  CHECK(default_resonance_tol(2e11, 1e11) == doctest::Approx(2e5));
  CHECK(default_resonance_tol(-3e11, 1e11) == doctest::Approx(3e5));
}

TEST_CASE("classification: degenerate pair with no drive") {
  CircuitParams p = reference_params();
  p.c_right = solve_cr_for_degeneracy(50, p);
  DriveSpec drive;
  drive.e0 = p.josephson_energy();

  const auto specs = classify_resonances(
      drive, p, {{50, Line::Left}, {50, Line::Right}});
  REQUIRE(specs.size() == 1);
  CHECK(specs[0].kind == ResonanceKind::DegenerateHopping);
  CHECK(specs[0].mode_left == ModeIndex{50, Line::Left});
  CHECK(specs[0].mode_right == ModeIndex{50, Line::Right});
  CHECK_FALSE(specs[0].drive_tone_index.has_value());
  CHECK(std::abs(specs[0].detuning) <= 1e-6 * omega_corrected(50, p));
}

TEST_CASE("classification: degenerate pair plus a sum-frequency tone") {
  CircuitParams p = reference_params();
  p.c_right = solve_cr_for_degeneracy(50, p);
  const double w = omega_corrected(50, p);
  DriveSpec drive;
  drive.e0 = p.josephson_energy();
  drive.tones = {{0.1, 0.0, 2.0 * w}};

  const auto specs = classify_resonances(
      drive, p, {{50, Line::Left}, {50, Line::Right}});
  // Degenerate hopping and the compound coupling from the pair loop, then
  // both single-mode conditions (the tone sits at twice either frequency).
  REQUIRE(specs.size() == 4);
  CHECK(specs[0].kind == ResonanceKind::DegenerateHopping);
  CHECK(specs[1].kind == ResonanceKind::GeneralLinearDegenerate);
  CHECK(specs[1].drive_tone_index == 0);
  CHECK(specs[2].kind == ResonanceKind::SingleModeSqueezeL);
  CHECK(specs[3].kind == ResonanceKind::SingleModeSqueezeR);
}

TEST_CASE("classification: raman direction follows the band ordering") {
  CircuitParams p = reference_params();
  const double gap = raman_drive(30, 30, p);
  REQUIRE(gap > 0.0);
  DriveSpec drive;
  drive.e0 = p.josephson_energy();
  drive.tones = {{0.1, 0.0, gap + 1e3}};

  auto specs = classify_resonances(
      drive, p, {{30, Line::Left}, {30, Line::Right}});
  REQUIRE(specs.size() == 1);
  CHECK(specs[0].kind == ResonanceKind::RamanLtoR);
  CHECK(specs[0].drive_tone_index == 0);
  CHECK(specs[0].detuning == doctest::Approx(1e3).epsilon(1e-6));

  // Shrinking C_r pushes the right band above the left one at j=30.
  CircuitParams q = reference_params(0.1e-12);
  REQUIRE(raman_drive(30, 30, q) < 0.0);
  drive.tones = {{0.1, 0.0, -raman_drive(30, 30, q)}};
  specs = classify_resonances(drive, q, {{30, Line::Left}, {30, Line::Right}});
  REQUIRE(specs.size() == 1);
  CHECK(specs[0].kind == ResonanceKind::RamanRtoL);
}

TEST_CASE("classification: counter-propagating pair generation") {
  CircuitParams p = reference_params();
  DriveSpec drive;
  drive.e0 = p.josephson_energy();
  drive.tones = {{0.3, 0.0, squeeze_drive(30, -30, p)}};

  const auto specs = classify_resonances(
      drive, p, {{30, Line::Left}, {-30, Line::Right}});
  REQUIRE(specs.size() == 1);
  CHECK(specs[0].kind == ResonanceKind::TwoModeSqueeze);
  CHECK(specs[0].mode_left == ModeIndex{30, Line::Left});
  CHECK(specs[0].mode_right == ModeIndex{-30, Line::Right});
  CHECK(specs[0].drive_tone_index == 0);

  // Co-propagating pair momenta do not satisfy that condition.
  const auto none = classify_resonances(
      drive, p, {{30, Line::Left}, {30, Line::Right}});
  CHECK(none.empty());
}

TEST_CASE("classification: two tones on a nondegenerate pair") {
  CircuitParams p = reference_params();
  const double gap = raman_drive(100, 50, p);
  const double sum = squeeze_drive(100, 50, p);
  DriveSpec drive;
  drive.e0 = p.josephson_energy();
  drive.tones = {{0.1, 0.0, std::abs(gap)}, {0.0, 0.1, sum}};

  const auto specs = classify_resonances(
      drive, p, {{100, Line::Left}, {50, Line::Right}});
  REQUIRE(specs.size() == 1);
  CHECK(specs[0].kind == ResonanceKind::PositionPositionNondegenerate);
  CHECK(specs[0].drive_tone_index == 1);

  // Same tones but only one of them present: nothing matches (the modes
  // differ in |j|, so no plain Raman condition applies either).
  DriveSpec partial;
  partial.e0 = drive.e0;
  partial.tones = {{0.1, 0.0, std::abs(gap)}};
  CHECK(classify_resonances(partial, p, {{100, Line::Left}, {50, Line::Right}})
            .empty());
}

TEST_CASE("classification honours an explicit tolerance") {
  CircuitParams p = reference_params();
  const double gap = raman_drive(30, 30, p);
  DriveSpec drive;
  drive.e0 = p.josephson_energy();
  drive.tones = {{0.1, 0.0, gap + 50.0}};

  const std::vector<ModeIndex> modes = {{30, Line::Left}, {30, Line::Right}};
  CHECK(classify_resonances(drive, p, modes, 1.0).empty());
  CHECK(classify_resonances(drive, p, modes, 100.0).size() == 1);
}
