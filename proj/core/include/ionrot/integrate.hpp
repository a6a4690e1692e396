// Fixed-step symplectic time integration (position Verlet: the force is
// evaluated at the half-step positions and mid-step time), plus energy
// bookkeeping helpers.
#pragma once

#include "ionrot/fields.hpp"
#include "ionrot/state.hpp"

namespace ionrot {

class VerletStepper {
 public:
  // Throws on step-size violation against field.max_step(mass).
  VerletStepper(const PotentialField& field, IonSystemState initial, double dt);

  void step();
  void steps(long long n);

  const IonSystemState& state() const { return state_; }
  double dt() const { return dt_; }
  double time() const { return state_.time; }

  // Kinetic + field potential + mutual Coulomb at the current state.
  double total_energy() const;

  double collision_distance = 1e-9;  // m; step() throws below this

 private:
  const PotentialField& field_;
  IonSystemState state_;
  double dt_;
  std::vector<Eigen::Vector3d> forces_;  // scratch
};

double total_energy(const IonSystemState& state, const PotentialField& field);

struct IntegrateOptions {
  long long sample_stride = 1;       // record every n-th step
  double collision_distance = 1e-9;  // m
};

// Integrates from initial.time to t_end and records a decimated trajectory
// (the initial state is always the first sample, the final state the last).
Trajectory integrate(const PotentialField& field, const IonSystemState& initial, double t_end,
                     double dt, const IntegrateOptions& opts = {});

// Plain time-average of the recorded energies over [t_from, t_to].
double average_energy(const Trajectory& traj, double t_from, double t_to);

}  // namespace ionrot
