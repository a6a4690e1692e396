#include "ionrot/integrate.hpp"

#include <cmath>
#include <stdexcept>

#include "ionrot/dynamics.hpp"
#include "ionrot/errors.hpp"

namespace ionrot {

void IonSystemState::validate(double min_dist) const {
  if (positions.size() != velocities.size())
    throw std::invalid_argument("IonSystemState: positions/velocities size mismatch");
  if (!(mass > 0) || !(charge > 0))
    throw std::invalid_argument("IonSystemState: mass and charge must be > 0");
  for (const auto& p : positions)
    if (!p.allFinite()) throw std::invalid_argument("IonSystemState: non-finite position");
  for (const auto& v : velocities)
    if (!v.allFinite()) throw std::invalid_argument("IonSystemState: non-finite velocity");
  for (size_t i = 0; i < positions.size(); ++i)
    for (size_t j = i + 1; j < positions.size(); ++j)
      if ((positions[i] - positions[j]).norm() <= min_dist)
        throw std::invalid_argument("IonSystemState: ions closer than the collision guard");
}

VerletStepper::VerletStepper(const PotentialField& field, IonSystemState initial, double dt)
    : field_(field), state_(std::move(initial)), dt_(dt) {
  if (!(dt > 0)) throw std::invalid_argument("VerletStepper: dt must be > 0");
  const double limit = field.max_step(state_.mass);
  if (dt > limit * (1.0 + 1e-12))
    throw std::invalid_argument("VerletStepper: dt exceeds the field's step limit");
  state_.validate(collision_distance);
  forces_.resize(state_.size());
}

void VerletStepper::step() {
  const size_t n = state_.size();
  const double half = 0.5 * dt_;
  const double t_mid = state_.time + half;

  for (size_t i = 0; i < n; ++i) state_.positions[i] += state_.velocities[i] * half;

  for (size_t i = 0; i < n; ++i) forces_[i] = field_.force(state_.positions[i], t_mid);
  add_coulomb_forces(state_.positions, state_.charge, forces_);

  const double inv_m = 1.0 / state_.mass;
  for (size_t i = 0; i < n; ++i) {
    state_.velocities[i] += forces_[i] * (dt_ * inv_m);
    state_.positions[i] += state_.velocities[i] * half;
  }
  state_.time += dt_;

  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if ((state_.positions[i] - state_.positions[j]).squaredNorm() <
          collision_distance * collision_distance)
        throw NumericalError("VerletStepper: ion collision (distance below guard)");
}

void VerletStepper::steps(long long n) {
  for (long long i = 0; i < n; ++i) step();
}

double VerletStepper::total_energy() const { return ionrot::total_energy(state_, field_); }

double total_energy(const IonSystemState& state, const PotentialField& field) {
  double e = coulomb_energy(state.positions, state.charge);
  for (size_t i = 0; i < state.size(); ++i) {
    e += field.potential(state.positions[i], state.time);
    e += 0.5 * state.mass * state.velocities[i].squaredNorm();
  }
  return e;
}

Trajectory integrate(const PotentialField& field, const IonSystemState& initial, double t_end,
                     double dt, const IntegrateOptions& opts) {
  if (!(t_end > initial.time)) throw std::invalid_argument("integrate: t_end must exceed start");
  VerletStepper stepper(field, initial, dt);
  stepper.collision_distance = opts.collision_distance;

  const long long n_steps = static_cast<long long>(std::ceil((t_end - initial.time) / dt - 1e-9));
  const long long stride = opts.sample_stride > 0 ? opts.sample_stride : 1;

  Trajectory traj;
  traj.times.reserve(static_cast<size_t>(n_steps / stride) + 2);
  auto record = [&traj, &stepper]() {
    traj.times.push_back(stepper.time());
    traj.states.push_back(stepper.state());
    traj.energies.push_back(stepper.total_energy());
  };
  record();
  for (long long i = 1; i <= n_steps; ++i) {
    stepper.step();
    if (i % stride == 0 || i == n_steps) record();
  }
  return traj;
}

double average_energy(const Trajectory& traj, double t_from, double t_to) {
  double sum = 0;
  long long count = 0;
  for (size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] >= t_from && traj.times[i] <= t_to) {
      sum += traj.energies[i];
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("average_energy: empty window");
  return sum / static_cast<double>(count);
}

}  // namespace ionrot
