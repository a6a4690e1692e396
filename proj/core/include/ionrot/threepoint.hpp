// Three-point turn: reordering by steering the string through a background
// whose local anisotropy varies in space, using only homogeneous fields.
//
// The background is a surrogate linear trap built from point charges: an
// endcap pair on the x-axis (axial confinement that stiffens towards the
// endcaps), a lid pair on the z-axis (splits the y/z degeneracy), and the
// transverse RF pseudopotential 1/2 kappa_rf (y^2 + z^2). Between the trap
// centre and an endcap the in-plane anisotropy passes through 1 on the
// axis; a path that detours around that point in y reorients the string
// deterministically, the direct on-axis path does not.
#pragma once

#include <vector>

#include "ionrot/fields.hpp"
#include "ionrot/pointcharge.hpp"
#include "ionrot/state.hpp"
#include "ionrot/turn.hpp"

namespace ionrot {

struct ThreePointParams {
  double endcap_distance = 200e-6;   // m, charges at (+-L, 0, 0)
  double lid_distance = 400e-6;      // m, charges at (0, 0, +-H)
  double axial_frequency = 0;        // rad/s, omega_x at the origin
  double rf_radial_frequency = 0;    // rad/s, sqrt(kappa_rf / m)
  double z_split_fraction = 0.3;     // (kappa_z - kappa_y)/kappa_rf at the origin
  double ion_mass = 0;               // kg
  double ion_charge = 0;             // C

  void validate() const;
};

class ThreePointField final : public PotentialField {
 public:
  explicit ThreePointField(const ThreePointParams& params);

  // Piecewise-linear uniform-field schedule through the waypoint settings,
  // one leg_time per segment; the last setting holds afterwards.
  void set_schedule(const std::vector<Vec3>& settings, double leg_time);

  double potential(const Eigen::Vector3d& p, double t) const override;
  Eigen::Vector3d force(const Eigen::Vector3d& p, double t) const override;
  Eigen::Matrix3d hessian(const Eigen::Vector3d& p, double t) const override;
  FieldKind kind() const override { return FieldKind::PointChargePlusUniform; }
  double max_step(double mass) const override;

  Vec3 steering_at(double t) const;
  double schedule_end() const;

  // Gradient of the background energy alone (no uniform term), in N.
  Vec3 background_gradient(const Vec3& p) const;

  const ThreePointParams& params() const { return params_; }

 private:
  ThreePointParams params_;
  std::vector<PointCharge> charges_;
  double kappa_rf_ = 0;  // J/m^2
  double kappa_probe_ = 0;  // max in-plane curvature over the working region
  std::vector<double> sched_times_;
  std::vector<Vec3> sched_fields_;
};

// Uniform field (V/m) that parks the single-particle minimum at p.
Vec3 steering_setting_for_minimum(const ThreePointField& field, const Vec3& p);

// Newton continuation for the single-particle minimum near hint; throws
// NumericalError when there is no confining minimum (degenerate or lost).
Vec3 find_local_minimum(const PotentialField& field, double t, const Vec3& hint);

// Ratio of second-lowest to lowest in-plane trap frequency at a point.
double local_inplane_anisotropy(const PotentialField& field, double t, const Vec3& at);

struct ThreePointResult {
  SwapResult swap;
  std::vector<double> waypoint_anisotropy;
  bool degenerate_path = false;  // on-axis anisotropy collapse along the path
};

struct ThreePointSettings {
  double leg_time = 400e-6;     // s per waypoint segment
  double dt = 0;                // 0: derived from the field's step limit
  double settle_periods = 5;    // axial periods before measurement
  double measure_periods = 4;
  double escape_distance = 50e-6;  // m from the instantaneous minimum
};

ThreePointResult three_point_turn(const ThreePointParams& params,
                                  const std::vector<Vec3>& waypoint_settings, int n_ions,
                                  const ThreePointSettings& settings = {});

// Settings corresponding to a list of waypoint positions.
std::vector<Vec3> settings_for_waypoints(const ThreePointParams& params,
                                         const std::vector<Vec3>& positions);

struct EnsembleOutcome {
  std::vector<bool> outcomes;   // success per jittered rerun
  int successes = 0;
  bool consistent = false;      // all outcomes identical
  bool degenerate_path = false; // nominal path degeneracy flag
};

// Reruns the turn with every waypoint coordinate jittered uniformly within
// +-jitter_fraction of the path extent; deterministic for a given seed.
EnsembleOutcome three_point_ensemble(const ThreePointParams& params,
                                     const std::vector<Vec3>& waypoint_positions, int n_ions,
                                     double jitter_fraction, int n_runs, unsigned long long seed,
                                     const ThreePointSettings& settings = {});

}  // namespace ionrot
