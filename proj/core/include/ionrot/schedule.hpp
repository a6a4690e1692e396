// Rotation-angle schedules for a half turn.
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ionrot {

enum class ProfileKind { ConstantVelocity, SineVelocity };
enum class TurnDirection { Clockwise, Anticlockwise };

struct TurnProfile {
  ProfileKind kind = ProfileKind::SineVelocity;
  double t_swap = 0;  // s
  TurnDirection direction = TurnDirection::Anticlockwise;

  void validate() const {
    if (!(t_swap > 0)) throw std::invalid_argument("TurnProfile: t_swap must be > 0");
  }
};

// theta(t) on [0, t_swap]; |theta| runs 0 -> pi. Constant velocity is the
// abrupt start/stop case; sine velocity follows the first half of a sine,
// so dtheta/dt vanishes at both ends.
inline double theta_schedule(const TurnProfile& profile, double t) {
  profile.validate();
  if (t < 0 || t > profile.t_swap)
    throw std::invalid_argument("theta_schedule: t outside [0, t_swap]");
  constexpr double pi = std::numbers::pi_v<double>;
  const double u = t / profile.t_swap;
  double theta;
  if (profile.kind == ProfileKind::ConstantVelocity) {
    theta = pi * u;
  } else {
    theta = 0.5 * pi * (1.0 - std::cos(pi * u));
  }
  return profile.direction == TurnDirection::Anticlockwise ? theta : -theta;
}

}  // namespace ionrot
