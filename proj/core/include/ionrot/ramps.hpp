// Electrode voltage ramps: key-position interpolation, RC low-pass
// filtering, steering-electrode basis, CSV import/export.
#pragma once

#include <array>
#include <string>
#include <vector>

namespace ionrot {

// Piecewise-linear multi-channel voltage table. Standard channel names are
// EC, ME, AE, XB, YB, DE, offset; any channel set is accepted.
struct RampTable {
  std::vector<std::string> channels;
  std::vector<double> times;                // s, strictly increasing
  std::vector<std::vector<double>> values;  // one row per time

  void validate() const;
  std::size_t channel_index(const std::string& name) const;  // throws if absent
  double value_at(double t, std::size_t channel) const;      // linear, clamped
  double t_begin() const { return times.front(); }
  double t_end() const { return times.back(); }
};

struct KeyPosition {
  double angle_deg = 0;  // string orientation at this key
  std::vector<double> channel_values;
};

// Ramp visiting the key orientations at times proportional to angle, over a
// total duration t_swap (linear interpolation between keys).
RampTable key_position_ramp(const std::vector<std::string>& channels,
                            const std::vector<KeyPosition>& keys, double t_swap);

// First-order RC low-pass applied per channel. The input is resampled to a
// uniform spacing of at most 1/(50 f_cutoff) and filtered with the exact
// first-order-hold recursion, which is exact for piecewise-linear inputs.
// The filter starts settled at the first row's values.
RampTable rc_filter(const RampTable& ramp, double f_cutoff);

// Orthogonal +-1 voltage patterns on the four steering electrodes, ordered
// (TL, TR, BL, BR):
//   offset    (+1, +1, +1, +1)
//   x-balance (+1, -1, +1, -1)   left vs right pair
//   y-balance (+1, +1, -1, -1)   top vs bottom pair
//   diagonal  (+1, -1, -1, +1)   TL/BR vs TR/BL
struct SteeringBasis {
  double offset = 0;
  double x_balance = 0;
  double y_balance = 0;
  double diagonal = 0;
};

std::array<double, 4> steering_to_electrodes(const SteeringBasis& basis);
SteeringBasis electrodes_to_steering(const std::array<double, 4>& volts);

std::string ramp_to_csv(const RampTable& ramp);
RampTable ramp_from_csv(const std::string& csv);

}  // namespace ionrot
