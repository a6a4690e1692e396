// External potential fields seen by the ions. All values are per-ion
// energies (J), forces (N) and energy curvatures (J/m^2); any ion charge is
// already folded in.
#pragma once

#include <memory>

#include <Eigen/Dense>

#include "ionrot/quadform.hpp"
#include "ionrot/schedule.hpp"
#include "ionrot/trap.hpp"

namespace ionrot {

enum class FieldKind { StaticQuadratic, RotatingQuadratic, FullRf, PointChargePlusUniform };

class PotentialField {
 public:
  virtual ~PotentialField() = default;

  virtual double potential(const Eigen::Vector3d& p, double t) const = 0;
  virtual Eigen::Vector3d force(const Eigen::Vector3d& p, double t) const = 0;
  virtual Eigen::Matrix3d hessian(const Eigen::Vector3d& p, double t) const = 0;
  virtual FieldKind kind() const = 0;

  // Largest integration step the field considers accurate for ions of the
  // given mass (secular and, where present, RF resolution limits).
  virtual double max_step(double mass) const = 0;
};

// U = 1/2 (x,y) Q (x,y)^T + 1/2 kz z^2.
class StaticQuadraticField final : public PotentialField {
 public:
  StaticQuadraticField(QuadForm2D inplane, double kappa_z)
      : q_(inplane), kz_(kappa_z) {}

  double potential(const Eigen::Vector3d& p, double t) const override;
  Eigen::Vector3d force(const Eigen::Vector3d& p, double t) const override;
  Eigen::Matrix3d hessian(const Eigen::Vector3d& p, double t) const override;
  FieldKind kind() const override { return FieldKind::StaticQuadratic; }
  double max_step(double mass) const override;

  const QuadForm2D& inplane() const { return q_; }
  double kappa_z() const { return kz_; }

 private:
  QuadForm2D q_;
  double kz_;
};

// One-point-turn pseudopotential: in-plane form diag(kx, ky) + dQ(theta(t)),
// z curvature fixed. Holds the final orientation for t > t_swap so the same
// field covers the settling phase. Requires kx < ky < kz.
class RotatingQuadraticField final : public PotentialField {
 public:
  RotatingQuadraticField(const CurvatureTriple& kappa, const TurnProfile& profile);

  double potential(const Eigen::Vector3d& p, double t) const override;
  Eigen::Vector3d force(const Eigen::Vector3d& p, double t) const override;
  Eigen::Matrix3d hessian(const Eigen::Vector3d& p, double t) const override;
  FieldKind kind() const override { return FieldKind::RotatingQuadratic; }
  double max_step(double mass) const override;

  double theta_at(double t) const;
  QuadForm2D inplane_at(double t) const;
  const CurvatureTriple& kappa() const { return kappa_; }
  const TurnProfile& profile() const { return profile_; }

 private:
  CurvatureTriple kappa_;
  TurnProfile profile_;
};

// Same turn with the RF pseudopotential replaced by the explicit drive
// U_rf = (cq/2)(y^2 - z^2) cos(Omega t); the DC part keeps playing the
// rotation waveform.
class FullRfTurnField final : public PotentialField {
 public:
  FullRfTurnField(const CurvatureTriple& kappa, const TurnProfile& profile,
                  double drive_energy_curvature, double drive_frequency);

  double potential(const Eigen::Vector3d& p, double t) const override;
  Eigen::Vector3d force(const Eigen::Vector3d& p, double t) const override;
  Eigen::Matrix3d hessian(const Eigen::Vector3d& p, double t) const override;
  FieldKind kind() const override { return FieldKind::FullRf; }
  double max_step(double mass) const override;

  double theta_at(double t) const;
  double drive_frequency() const { return omega_; }

 private:
  QuadForm2D dc_inplane_at(double t) const;

  CurvatureTriple kappa_;
  TurnProfile profile_;
  double cq_;     // J/m^2, energy-curvature amplitude of the drive
  double omega_;  // rad/s
};

}  // namespace ionrot
