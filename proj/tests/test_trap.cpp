// Curvature decomposition and RF-drive relations.
//
// Reference numbers, computed independently:
//   (120, 230, 790) kHz triple: kappa_rf/m = (wx^2+wy^2+wz^2)/2 gives an
//   RF-only radial frequency of 587.9626 kHz; with a 12 um offset the
//   barrier is 0.40698 meV. Mathieu q at a 10.125 MHz drive: 0.164248.
#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "ionrot/constants.hpp"
#include "ionrot/errors.hpp"
#include "ionrot/trap.hpp"
#include "ionrot/units.hpp"

using namespace ionrot;
using ionrot::units::rad_from_khz;

namespace {
const double kMass = ca40_ion_mass();
const double kCharge = kConstants.elementary_charge;

CurvatureTriple paper_triple() {
  return rf_curvature_from_secular(rad_from_khz(120), rad_from_khz(230), rad_from_khz(790),
                                   kMass);
}
}  // namespace

TEST_CASE("TrapParams invariants") {
  TrapParams ok{300.0, units::rad_from_mhz(10.125), kMass, kCharge, rad_from_khz(120)};
  CHECK_NOTHROW(ok.validate());
  TrapParams slow_rf = ok;
  slow_rf.rf_frequency = rad_from_khz(500);  // below 10x the axial frequency
  CHECK_THROWS_AS(slow_rf.validate(), std::invalid_argument);
  TrapParams bad_mass = ok;
  bad_mass.ion_mass = 0;
  CHECK_THROWS_AS(bad_mass.validate(), std::invalid_argument);
}

TEST_CASE("curvature triple structural identities hold exactly") {
  const CurvatureTriple k = paper_triple();
  CHECK(k.kappa_x() == k.kappa_dc_x);
  CHECK(k.kappa_y() == k.kappa_rf + k.kappa_dc_y);
  CHECK(k.kappa_z() == k.kappa_rf - (k.kappa_dc_x + k.kappa_dc_y));
  CHECK(k.kappa_dc_x + k.kappa_dc_y + k.kappa_dc_z() == 0.0);
}

TEST_CASE("decomposition agrees with a direct 3x3 solve") {
  const double wx = rad_from_khz(120), wy = rad_from_khz(230), wz = rad_from_khz(790);
  // Unknowns (kdx, kdy, krf).
  Eigen::Matrix3d a;
  a << 1, 0, 0, 0, 1, 1, -1, -1, 1;
  Eigen::Vector3d b(kMass * wx * wx, kMass * wy * wy, kMass * wz * wz);
  const Eigen::Vector3d sol = a.fullPivLu().solve(b);

  const CurvatureTriple k = paper_triple();
  CHECK(k.kappa_dc_x == doctest::Approx(sol(0)).epsilon(1e-12));
  CHECK(k.kappa_dc_y == doctest::Approx(sol(1)).epsilon(1e-12));
  CHECK(k.kappa_rf == doctest::Approx(sol(2)).epsilon(1e-12));

  const double f_rf_khz = units::khz_from_rad(std::sqrt(k.kappa_rf / kMass));
  CHECK(f_rf_khz == doctest::Approx(587.9626).epsilon(1e-5));
}

TEST_CASE("secular frequencies round-trip") {
  const CurvatureTriple k = paper_triple();
  const auto w = secular_frequencies(k, kMass);
  CHECK(w[0] == doctest::Approx(rad_from_khz(120)).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(rad_from_khz(230)).epsilon(1e-12));
  CHECK(w[2] == doctest::Approx(rad_from_khz(790)).epsilon(1e-12));
}

TEST_CASE("degenerate transverse input keeps Laplace consistency") {
  // wy = wz forces kappa_dc_y = -kappa_dc_x/2.
  const CurvatureTriple k =
      rf_curvature_from_secular(rad_from_khz(100), rad_from_khz(400), rad_from_khz(400), kMass);
  CHECK(k.kappa_dc_y == doctest::Approx(-0.5 * k.kappa_dc_x).epsilon(1e-12));
}

TEST_CASE("equal frequencies still decompose (direct substitution)") {
  // kappa_rf = 3/2 m w^2 satisfies all three equations with kdy = -kdx/2.
  const double w = rad_from_khz(200);
  const CurvatureTriple k = rf_curvature_from_secular(w, w, w, kMass);
  CHECK(k.kappa_rf == doctest::Approx(1.5 * kMass * w * w).epsilon(1e-12));
  const auto f = secular_frequencies(k, kMass);
  CHECK(f[0] == doctest::Approx(w));
  CHECK(f[1] == doctest::Approx(w));
  CHECK(f[2] == doctest::Approx(w));
}

TEST_CASE("invalid secular inputs are rejected") {
  CHECK_THROWS_AS(rf_curvature_from_secular(0, 1, 1, kMass), std::invalid_argument);
  CHECK_THROWS_AS(rf_curvature_from_secular(1, 1, 1, -1.0), std::invalid_argument);
}

TEST_CASE("rf barrier") {
  const CurvatureTriple k = paper_triple();
  CHECK(rf_barrier(k.kappa_rf, 0.0) == 0.0);
  const double b = rf_barrier(k.kappa_rf, 12e-6);
  CHECK(units::mev_from_joule(b) == doctest::Approx(0.40698).epsilon(2e-4));
  CHECK(units::mev_from_joule(b) == doctest::Approx(0.40).epsilon(0.05));  // 0.40 +- 0.02
  CHECK(rf_barrier(k.kappa_rf, 24e-6) == doctest::Approx(4.0 * b).epsilon(1e-14));
  CHECK(rf_barrier(2.0 * k.kappa_rf, 12e-6) == doctest::Approx(2.0 * b).epsilon(1e-14));
  CHECK_THROWS_AS(rf_barrier(k.kappa_rf, -1e-6), std::invalid_argument);
}

TEST_CASE("rf drive from pseudopotential curvature") {
  const CurvatureTriple k = paper_triple();
  const double omega_t = units::rad_from_mhz(10.125);
  const RfDrive d = rf_drive_from_pseudocurvature(k.kappa_rf, omega_t, kMass, kCharge);

  // q = 2 sqrt(2) w_rf / Omega, with w_rf = sqrt(kappa_rf/m).
  const double w_rf = std::sqrt(k.kappa_rf / kMass);
  CHECK(d.mathieu_q == doctest::Approx(2.0 * std::sqrt(2.0) * w_rf / omega_t).epsilon(1e-12));
  CHECK(d.mathieu_q == doctest::Approx(0.164248).epsilon(1e-4));

  // The drive must reproduce kappa_rf through the cycle-averaged relation
  // kappa = q_ion^2 c^2 / (2 m Omega^2).
  const double back =
      kCharge * kCharge * d.curvature * d.curvature / (2.0 * kMass * omega_t * omega_t);
  CHECK(back == doctest::Approx(k.kappa_rf).epsilon(1e-12));

  const RfDrive zero = rf_drive_from_pseudocurvature(0.0, omega_t, kMass, kCharge);
  CHECK(zero.curvature == 0.0);
  CHECK(zero.mathieu_q == 0.0);

  CHECK_THROWS_AS(rf_drive_from_pseudocurvature(1e4 * k.kappa_rf, omega_t, kMass, kCharge),
                  NumericalError);
}

TEST_CASE("energy in quanta") {
  const double w = rad_from_khz(100);
  CHECK(energy_in_quanta(kConstants.reduced_planck * w, w) == doctest::Approx(1.0));
  CHECK(energy_in_quanta(0.0, w) == 0.0);
  CHECK(energy_in_quanta(6.626e-29, w) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK_THROWS_AS(energy_in_quanta(1.0, 0.0), std::invalid_argument);
}
