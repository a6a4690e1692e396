// N-ion phase-space state and recorded trajectories.
#pragma once

#include <vector>

#include <Eigen/Dense>

namespace ionrot {

struct IonSystemState {
  double mass = 0;    // kg, identical ions
  double charge = 0;  // C
  double time = 0;    // s
  std::vector<Eigen::Vector3d> positions;
  std::vector<Eigen::Vector3d> velocities;

  std::size_t size() const { return positions.size(); }

  // Finite entries, matching array sizes, pairwise distances above min_dist.
  void validate(double min_dist = 1e-9) const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<IonSystemState> states;
  std::vector<double> energies;  // J, total (kinetic + field + Coulomb)
};

}  // namespace ionrot
