// Point-charge surrogate of six segmented control electrodes.
//
// Electrodes are modelled as small charged spheres whose charge is directly
// proportional to the applied voltage (self-capacitance limit), so charge
// weights are interchangeable with volts here. Spatial extent, leads and
// RF-electrode shielding are neglected. Lengths enter only through the
// spacings a (along the RF axis) and b (transverse); strength helpers use
// b = 1, i.e. curvatures per unit K, per volt, per b^3.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ionrot/constants.hpp"
#include "ionrot/quadform.hpp"

namespace ionrot {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct PointCharge {
  Vec3 position = Vec3::Zero();  // m
  double weight = 0;             // C (proportional to electrode voltage)
};

enum class LayoutKind { Transverse, Diagonal };

// Six- (transverse) or four-charge (diagonal) electrode arrangement.
// Transverse: corners at (+-a/2, +-b/2, 0) with corner_weight, middles at
// (0, +-b/2, 0) with middle_weight. Diagonal: corners only, weights
// +corner at x*y > 0 and -corner at x*y < 0.
struct ElectrodeLayout {
  double spacing_a = 0;
  double spacing_b = 0;
  double corner_weight = 0;
  double middle_weight = 0;
  LayoutKind configuration = LayoutKind::Transverse;

  static ElectrodeLayout transverse(double a, double b, double corner, double middle);
  static ElectrodeLayout diagonal(double a, double b, double corner);

  std::vector<PointCharge> charges() const;
};

// Coulomb potential (V), field (V/m) and Hessian (V/m^2) of a charge set.
// Throws NumericalError within 1e-12 m of any charge.
double potential_at(const std::vector<PointCharge>& charges, const Vec3& point,
                    double coulomb_k = kConstants.coulomb_constant);
Vec3 field_at(const std::vector<PointCharge>& charges, const Vec3& point,
              double coulomb_k = kConstants.coulomb_constant);
Mat3 hessian_at(const std::vector<PointCharge>& charges, const Vec3& point,
                double coulomb_k = kConstants.coulomb_constant);

double potential_at(const ElectrodeLayout& layout, const Vec3& point,
                    double coulomb_k = kConstants.coulomb_constant);
Vec3 field_at(const ElectrodeLayout& layout, const Vec3& point,
              double coulomb_k = kConstants.coulomb_constant);
Mat3 hessian_at(const ElectrodeLayout& layout, const Vec3& point,
                double coulomb_k = kConstants.coulomb_constant);

// z-curvature at the origin of the potential of one charge at (x, y, 0):
// -q K / (x^2 + y^2)^(3/2).
double z_curvature_single(double charge, double x, double y,
                          double coulomb_k = kConstants.coulomb_constant);

// Middle-to-corner weight ratio that cancels the layout's z-curvature:
// -2 (1 + aspect^2)^(-3/2), aspect = a/b.
double charge_ratio(double aspect);

// Transverse layout with the ratio applied and the higher-|voltage| electrode
// set pinned to v_max (corners for aspect > 0.766..., middles below).
ElectrodeLayout transverse_layout_for_vmax(double aspect, double v_max);
ElectrodeLayout diagonal_layout_for_vmax(double aspect, double v_max);

// In-plane quadrupole curvature achievable at voltage budget v_max, with
// b = 1 m: transverse returns |k_xx - k_yy|/2, diagonal returns |k_xy| at the
// origin. Equal at unit aspect.
double transverse_strength(double aspect, double v_max);
double diagonal_strength(double aspect, double v_max);

// Aspect ratio maximising transverse_strength, golden-section on [0.2, 5]
// to 1e-4. Analytically sqrt(2/3).
double optimal_transverse_aspect();

// In-plane block of the layout Hessian times the ion charge, as an energy
// curvature form. Rejects layouts whose zz entry exceeds 1e-8 of the
// dominant entry (not a 2D quadrupole).
QuadForm2D quadform_from_layout(const ElectrodeLayout& layout, double ion_charge,
                                double coulomb_k = kConstants.coulomb_constant);

}  // namespace ionrot
