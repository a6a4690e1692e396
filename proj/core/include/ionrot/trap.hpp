// Trap parameters, curvature bookkeeping and pseudopotential/RF relations.
//
// Curvatures are stored as energy curvatures (J/m^2, i.e. ion charge times
// potential curvature), so omega = sqrt(kappa/m) holds directly. A
// CurvatureTriple stores the DC/RF decomposition; the totals are derived,
// which makes the structural identities hold exactly:
//   kappa_x = kappa_dc_x
//   kappa_y = kappa_rf + kappa_dc_y
//   kappa_z = kappa_rf - (kappa_dc_x + kappa_dc_y)
// The DC part obeys Laplace by construction (its three curvatures sum to 0).
#pragma once

#include <array>

namespace ionrot {

struct TrapParams {
  double rf_amplitude = 0;               // V, zero-to-peak (provenance only)
  double rf_frequency = 0;               // rad/s
  double ion_mass = 0;                   // kg
  double ion_charge = 0;                 // C
  double reference_axial_frequency = 0;  // rad/s, the heating unit omega_L

  // Throws std::invalid_argument listing all violated invariants.
  void validate() const;
};

struct CurvatureTriple {
  double kappa_dc_x = 0;  // J/m^2
  double kappa_dc_y = 0;  // J/m^2
  double kappa_rf = 0;    // J/m^2

  double kappa_x() const { return kappa_dc_x; }
  double kappa_y() const { return kappa_rf + kappa_dc_y; }
  double kappa_z() const { return kappa_rf - (kappa_dc_x + kappa_dc_y); }
  double kappa_dc_z() const { return -(kappa_dc_x + kappa_dc_y); }
};

// Solves the DC/RF decomposition from the three secular frequencies.
// Throws NumericalError if the resulting kappa_rf is not positive.
CurvatureTriple rf_curvature_from_secular(double omega_x, double omega_y, double omega_z,
                                          double mass);

// (omega_x, omega_y, omega_z) implied by a triple; inverse of the above.
std::array<double, 3> secular_frequencies(const CurvatureTriple& k, double mass);

// Pseudopotential energy 1/2 kappa_rf offset^2 of an ion displaced from the
// RF null. offset >= 0.
double rf_barrier(double kappa_rf, double offset);

struct RfDrive {
  double curvature = 0;  // V/m^2, amplitude c of U_rf = (c/2)(y^2 - z^2) cos(Omega t)
  double mathieu_q = 0;  // 2 q c / (m Omega^2)
};

// Instantaneous RF quadrupole whose cycle-averaged pseudopotential has energy
// curvature kappa_rf in both y and z. Rejects mathieu_q > 0.9.
RfDrive rf_drive_from_pseudocurvature(double kappa_rf, double omega_rf_drive, double mass,
                                      double charge);

// Energy in units of hbar * omega_L.
double energy_in_quanta(double energy, double omega_l);

}  // namespace ionrot
