#include "ionrot/fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ionrot/units.hpp"

namespace ionrot {

namespace {

double quad_potential(const QuadForm2D& q, double kz, const Eigen::Vector3d& p) {
  return 0.5 * (q.qxx * p.x() * p.x() + 2.0 * q.qxy * p.x() * p.y() + q.qyy * p.y() * p.y()) +
         0.5 * kz * p.z() * p.z();
}

Eigen::Vector3d quad_force(const QuadForm2D& q, double kz, const Eigen::Vector3d& p) {
  return {-(q.qxx * p.x() + q.qxy * p.y()), -(q.qxy * p.x() + q.qyy * p.y()), -kz * p.z()};
}

Eigen::Matrix3d quad_hessian(const QuadForm2D& q, double kz) {
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  h(0, 0) = q.qxx;
  h(0, 1) = h(1, 0) = q.qxy;
  h(1, 1) = q.qyy;
  h(2, 2) = kz;
  return h;
}

// 1/200 of the fastest secular period implied by the largest curvature.
double secular_step_limit(double kappa_max, double mass) {
  const double omega = std::sqrt(std::max(kappa_max, 1e-300) / mass);
  return units::kTwoPi / omega / 200.0;
}

}  // namespace

double StaticQuadraticField::potential(const Eigen::Vector3d& p, double) const {
  return quad_potential(q_, kz_, p);
}
Eigen::Vector3d StaticQuadraticField::force(const Eigen::Vector3d& p, double) const {
  return quad_force(q_, kz_, p);
}
Eigen::Matrix3d StaticQuadraticField::hessian(const Eigen::Vector3d&, double) const {
  return quad_hessian(q_, kz_);
}
double StaticQuadraticField::max_step(double mass) const {
  const double kmax = std::max({std::abs(q_.qxx), std::abs(q_.qyy), std::abs(kz_)});
  return secular_step_limit(kmax, mass);
}

RotatingQuadraticField::RotatingQuadraticField(const CurvatureTriple& kappa,
                                               const TurnProfile& profile)
    : kappa_(kappa), profile_(profile) {
  profile_.validate();
  if (!(kappa.kappa_x() < kappa.kappa_y() && kappa.kappa_y() < kappa.kappa_z()))
    throw std::invalid_argument(
        "RotatingQuadraticField: requires kappa_x < kappa_y < kappa_z "
        "(string along x, z stiffest)");
}

double RotatingQuadraticField::theta_at(double t) const {
  const double tc = std::clamp(t, 0.0, profile_.t_swap);
  return theta_schedule(profile_, tc);
}

QuadForm2D RotatingQuadraticField::inplane_at(double t) const {
  const QuadForm2D base{kappa_.kappa_x(), 0.0, kappa_.kappa_y()};
  return base + delta_q(theta_at(t), kappa_.kappa_x(), kappa_.kappa_y());
}

double RotatingQuadraticField::potential(const Eigen::Vector3d& p, double t) const {
  return quad_potential(inplane_at(t), kappa_.kappa_z(), p);
}
Eigen::Vector3d RotatingQuadraticField::force(const Eigen::Vector3d& p, double t) const {
  return quad_force(inplane_at(t), kappa_.kappa_z(), p);
}
Eigen::Matrix3d RotatingQuadraticField::hessian(const Eigen::Vector3d&, double t) const {
  return quad_hessian(inplane_at(t), kappa_.kappa_z());
}
double RotatingQuadraticField::max_step(double mass) const {
  return secular_step_limit(kappa_.kappa_z(), mass);
}

FullRfTurnField::FullRfTurnField(const CurvatureTriple& kappa, const TurnProfile& profile,
                                 double drive_energy_curvature, double drive_frequency)
    : kappa_(kappa), profile_(profile), cq_(drive_energy_curvature), omega_(drive_frequency) {
  profile_.validate();
  if (!(drive_frequency > 0))
    throw std::invalid_argument("FullRfTurnField: drive frequency must be > 0");
}

double FullRfTurnField::theta_at(double t) const {
  const double tc = std::clamp(t, 0.0, profile_.t_swap);
  return theta_schedule(profile_, tc);
}

QuadForm2D FullRfTurnField::dc_inplane_at(double t) const {
  const QuadForm2D base{kappa_.kappa_dc_x, 0.0, kappa_.kappa_dc_y};
  return base + delta_q(theta_at(t), kappa_.kappa_x(), kappa_.kappa_y());
}

double FullRfTurnField::potential(const Eigen::Vector3d& p, double t) const {
  const double rf = 0.5 * cq_ * (p.y() * p.y() - p.z() * p.z()) * std::cos(omega_ * t);
  return quad_potential(dc_inplane_at(t), kappa_.kappa_dc_z(), p) + rf;
}

Eigen::Vector3d FullRfTurnField::force(const Eigen::Vector3d& p, double t) const {
  const double c = cq_ * std::cos(omega_ * t);
  Eigen::Vector3d f = quad_force(dc_inplane_at(t), kappa_.kappa_dc_z(), p);
  f.y() -= c * p.y();
  f.z() += c * p.z();
  return f;
}

Eigen::Matrix3d FullRfTurnField::hessian(const Eigen::Vector3d&, double t) const {
  const double c = cq_ * std::cos(omega_ * t);
  Eigen::Matrix3d h = quad_hessian(dc_inplane_at(t), kappa_.kappa_dc_z());
  h(1, 1) += c;
  h(2, 2) -= c;
  return h;
}

double FullRfTurnField::max_step(double mass) const {
  const double rf_limit = units::kTwoPi / omega_ / 40.0;
  return std::min(rf_limit, secular_step_limit(kappa_.kappa_z(), mass));
}

}  // namespace ionrot
