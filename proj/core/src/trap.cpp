#include "ionrot/trap.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ionrot/constants.hpp"
#include "ionrot/errors.hpp"

namespace ionrot {

void TrapParams::validate() const {
  std::ostringstream issues;
  if (!(ion_mass > 0)) issues << "ion_mass must be > 0; ";
  if (!(ion_charge > 0)) issues << "ion_charge must be > 0; ";
  if (!(reference_axial_frequency > 0)) issues << "reference_axial_frequency must be > 0; ";
  if (!(rf_frequency > 10.0 * reference_axial_frequency))
    issues << "rf_frequency must exceed 10x reference_axial_frequency (secular separation); ";
  const std::string s = issues.str();
  if (!s.empty()) throw std::invalid_argument("TrapParams: " + s);
}

CurvatureTriple rf_curvature_from_secular(double omega_x, double omega_y, double omega_z,
                                          double mass) {
  if (!(omega_x > 0 && omega_y > 0 && omega_z > 0))
    throw std::invalid_argument("rf_curvature_from_secular: frequencies must be > 0");
  if (!(mass > 0)) throw std::invalid_argument("rf_curvature_from_secular: mass must be > 0");

  // kappa_dc_x = m wx^2; adding the y and z equations eliminates kappa_dc_y:
  // 2 kappa_rf - kappa_dc_x = m (wy^2 + wz^2).
  CurvatureTriple k;
  k.kappa_dc_x = mass * omega_x * omega_x;
  k.kappa_rf = 0.5 * mass * (omega_x * omega_x + omega_y * omega_y + omega_z * omega_z);
  k.kappa_dc_y = mass * omega_y * omega_y - k.kappa_rf;
  if (!(k.kappa_rf > 0))
    throw NumericalError("rf_curvature_from_secular: unphysical kappa_rf <= 0");
  return k;
}

std::array<double, 3> secular_frequencies(const CurvatureTriple& k, double mass) {
  return {std::sqrt(k.kappa_x() / mass), std::sqrt(k.kappa_y() / mass),
          std::sqrt(k.kappa_z() / mass)};
}

double rf_barrier(double kappa_rf, double offset) {
  if (offset < 0) throw std::invalid_argument("rf_barrier: offset must be >= 0");
  return 0.5 * kappa_rf * offset * offset;
}

RfDrive rf_drive_from_pseudocurvature(double kappa_rf, double omega_rf_drive, double mass,
                                      double charge) {
  if (kappa_rf < 0) throw std::invalid_argument("rf_drive: kappa_rf must be >= 0");
  if (!(omega_rf_drive > 0 && mass > 0 && charge > 0))
    throw std::invalid_argument("rf_drive: drive frequency, mass and charge must be > 0");
  RfDrive d;
  d.curvature = std::sqrt(2.0 * mass * omega_rf_drive * omega_rf_drive * kappa_rf) / charge;
  d.mathieu_q = 2.0 * charge * d.curvature / (mass * omega_rf_drive * omega_rf_drive);
  if (d.mathieu_q > 0.9)
    throw NumericalError("rf_drive: mathieu_q > 0.9, outside the lowest stability region");
  return d;
}

double energy_in_quanta(double energy, double omega_l) {
  if (!(omega_l > 0)) throw std::invalid_argument("energy_in_quanta: omega_l must be > 0");
  return energy / (kConstants.reduced_planck * omega_l);
}

}  // namespace ionrot
