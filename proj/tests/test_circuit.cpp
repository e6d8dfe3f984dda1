#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ctl/circuit.hpp"
#include "ctl/constants.hpp"

using namespace ctl;

namespace {

// Reference circuit every frozen value below was computed for.
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

}  // namespace

TEST_CASE("wave vectors cover the first Brillouin zone and nothing else") {
  CircuitParams p = reference_params();
  const double base = 2.0 * std::numbers::pi / (p.n_cells * p.dx);

  CHECK(wave_vector(1, p) == doctest::Approx(base).epsilon(1e-15));
  CHECK(wave_vector(100, p) == doctest::Approx(100 * base).epsilon(1e-15));
  CHECK(wave_vector(-3, p) == doctest::Approx(-3 * base).epsilon(1e-15));

  CHECK_THROWS_AS(wave_vector(0, p), std::domain_error);
  CHECK_THROWS_AS(wave_vector(101, p), std::domain_error);
  CHECK_THROWS_AS(wave_vector(-101, p), std::domain_error);

  p.dx = 2.0;
  CHECK(wave_vector(5, p) == doctest::Approx(2.5 * base).epsilon(1e-15));
}

TEST_CASE("half-cell sine is even in j and independent of dx") {
  CircuitParams p = reference_params();
  for (int j : {1, 17, 50, 100}) {
    CHECK(half_cell_sine(j, p) ==
          doctest::Approx(std::sin(std::numbers::pi * j / 200)).epsilon(1e-15));
    CHECK(half_cell_sine(-j, p) == half_cell_sine(j, p));
  }
  CircuitParams q = p;
  q.dx = 3.7;
  CHECK(half_cell_sine(30, q) == half_cell_sine(30, p));
  CHECK(half_cell_sine(30, p) == doctest::Approx(0.45399049973954675));
}

TEST_CASE("junction energy scale") {
  CircuitParams p = reference_params();

  CHECK(p.josephson_energy() == doctest::Approx(4.113824728422547e-22));
  CHECK(p.squid_prefactor() == doctest::Approx(3798168622.0237765));

  CircuitParams doubled = p;
  doubled.i_crit *= 2.0;
  CHECK(doubled.josephson_energy() ==
        doctest::Approx(2.0 * p.josephson_energy()).epsilon(1e-15));

  CircuitParams off = p;
  off.i_crit = 0.0;
  CHECK(off.josephson_energy() == 0.0);
  CHECK(off.squid_prefactor() == 0.0);
}

TEST_CASE("bare dispersion pins and monotonicity") {
  CircuitParams p = reference_params();

  CHECK(omega_bare(100, p) == doctest::Approx(102062072615.96576));
  CHECK(upsilon_bare(50, p) == doctest::Approx(144337567297.40643));

  // Band edges: both lines hit their extremes at |j| = N/2.
  const double lc = std::sqrt(p.c_left * p.l_left);
  const double rc = std::sqrt(p.c_right * p.l_right);
  CHECK(omega_bare(100, p) == doctest::Approx(1.0 / (2.0 * lc)).epsilon(1e-14));
  CHECK(upsilon_bare(100, p) == doctest::Approx(2.0 / rc).epsilon(1e-14));

  for (int j = 2; j <= 100; ++j) {
    CHECK(omega_bare(j, p) < omega_bare(j - 1, p));
    CHECK(upsilon_bare(j, p) > upsilon_bare(j - 1, p));
  }

  for (int j : {1, 30, 77}) {
    const double s = half_cell_sine(j, p);
    CHECK(epsilon_bare(j, p) ==
          doctest::Approx(4.0 * constants::hbar * omega_bare(j, p) * s * s)
              .epsilon(1e-15));
  }
}

TEST_CASE("corrected dispersion sits above bare and matches the shift formulas") {
  CircuitParams p = reference_params();
  const double f = p.squid_prefactor();

  CHECK(omega_corrected(30, p) == doctest::Approx(225067192734.4247));
  CHECK(upsilon_corrected(30, p) == doctest::Approx(92798503233.70992));
  CHECK(omega_corrected(50, p) == doctest::Approx(144502032823.1329));

  for (int j : {1, 30, 50, 100}) {
    const double w = omega_bare(j, p);
    const double u = upsilon_bare(j, p);
    const double s = half_cell_sine(j, p);
    CHECK(omega_corrected(j, p) > w);
    CHECK(upsilon_corrected(j, p) > u);
    CHECK(omega_corrected(j, p) - w ==
          doctest::Approx(f / (4.0 * p.n_cells * p.c_left * w * s * s))
              .epsilon(1e-10));
    CHECK(upsilon_corrected(j, p) - u ==
          doctest::Approx(f / (p.n_cells * p.c_right * u)).epsilon(1e-10));
    CHECK(epsilon_corrected(j, p) - epsilon_bare(j, p) ==
          doctest::Approx(constants::hbar * f / (p.n_cells * p.c_left * w))
              .epsilon(1e-10));
  }
}

TEST_CASE("corrections vanish with the junction switched off") {
  CircuitParams p = reference_params();
  p.i_crit = 0.0;
  p.validate();
  for (int j : {1, 42, 100}) {
    CHECK(omega_corrected(j, p) == omega_bare(j, p));
    CHECK(upsilon_corrected(j, p) == upsilon_bare(j, p));
    CHECK(epsilon_corrected(j, p) == epsilon_bare(j, p));
  }
}

TEST_CASE("mode_freq dispatch follows the line tag") {
  CircuitParams p = reference_params();
  ModeIndex left{30, Line::Left};
  ModeIndex right{30, Line::Right};
  CHECK(mode_freq_bare(left, p) == omega_bare(30, p));
  CHECK(mode_freq_bare(right, p) == upsilon_bare(30, p));
  CHECK(mode_freq_corrected(left, p) == omega_corrected(30, p));
  CHECK(mode_freq_corrected(right, p) == upsilon_corrected(30, p));
  CHECK(ModeIndex{30, Line::Left} == left);
  CHECK_FALSE(ModeIndex{-30, Line::Left} == left);
}

TEST_CASE("drive envelope evaluates tone by tone") {
  DriveSpec d;
  d.e0 = 2.0e-22;
  d.tones = {{0.1, 0.05, 1.0e9}, {0.0, 0.02, 3.0e9}};

  CHECK(drive_energy(0.0, d) ==
        doctest::Approx(d.e0 * (1.0 + 0.05 + 0.02)).epsilon(1e-15));

  const double t = 0.37e-9;
  const double expected =
      d.e0 * (1.0 + 0.1 * std::sin(1.0e9 * t) + 0.05 * std::cos(1.0e9 * t) +
              0.02 * std::cos(3.0e9 * t));
  CHECK(drive_energy(t, d) == doctest::Approx(expected).epsilon(1e-15));

  DriveSpec off;
  off.e0 = d.e0;
  CHECK(drive_energy(123.0, off) == d.e0);
}

TEST_CASE("chi reproduces the static interaction scale") {
  CircuitParams p = reference_params();
  DriveSpec d;
  d.e0 = p.josephson_energy();
  // hbar * F / (2N) for the undriven junction.
  CHECK(chi(0.0, d, p) == doctest::Approx(1.0013603962500001e-27));

  d.tones = {{0.25, 0.0, 2.0e9}};
  const double t = 1.1e-9;
  CHECK(chi(t, d, p) ==
        doctest::Approx(1.0013603962500001e-27 *
                        (1.0 + 0.25 * std::sin(2.0e9 * t)))
            .epsilon(1e-12));
}

TEST_CASE("parameter validation") {
  CircuitParams p = reference_params();
  CHECK_NOTHROW(p.validate());

  CircuitParams odd = p;
  odd.n_cells = 201;
  CHECK_THROWS_AS(odd.validate(), std::invalid_argument);

  CircuitParams zero_cap = p;
  zero_cap.c_right = 0.0;
  CHECK_THROWS_AS(zero_cap.validate(), std::invalid_argument);

  CircuitParams neg_ind = p;
  neg_ind.l_left = -1e-12;
  CHECK_THROWS_AS(neg_ind.validate(), std::invalid_argument);

  CircuitParams neg_current = p;
  neg_current.i_crit = -1e-6;
  CHECK_THROWS_AS(neg_current.validate(), std::invalid_argument);

  CircuitParams bare = p;
  bare.i_crit = 0.0;
  CHECK_NOTHROW(bare.validate());
}
