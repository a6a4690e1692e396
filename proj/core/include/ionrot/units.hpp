// Boundary unit conversions. The library itself is strict SI; these helpers
// exist so that configs and reports can speak V, kHz, um, amu, meV.
#pragma once

#include <numbers>

#include "ionrot/constants.hpp"

namespace ionrot::units {

inline constexpr double kPi = std::numbers::pi_v<double>;
inline constexpr double kTwoPi = 2.0 * kPi;

constexpr double rad_from_khz(double f_khz) { return kTwoPi * f_khz * 1e3; }
constexpr double rad_from_mhz(double f_mhz) { return kTwoPi * f_mhz * 1e6; }
constexpr double khz_from_rad(double w) { return w / (kTwoPi * 1e3); }
constexpr double mhz_from_rad(double w) { return w / (kTwoPi * 1e6); }

constexpr double meters_from_um(double um) { return um * 1e-6; }
constexpr double um_from_meters(double m) { return m * 1e6; }

constexpr double seconds_from_us(double us) { return us * 1e-6; }
constexpr double us_from_seconds(double s) { return s * 1e6; }
constexpr double seconds_from_ms(double ms) { return ms * 1e-3; }

constexpr double kg_from_amu(double amu) { return amu * kConstants.atomic_mass_unit; }

constexpr double joule_from_mev(double mev) { return mev * 1e-3 * kConstants.elementary_charge; }
constexpr double mev_from_joule(double j) { return j / (1e-3 * kConstants.elementary_charge); }
constexpr double joule_from_ev(double ev) { return ev * kConstants.elementary_charge; }

constexpr double rad_from_deg(double deg) { return deg * kPi / 180.0; }
constexpr double deg_from_rad(double rad) { return rad * 180.0 / kPi; }

}  // namespace ionrot::units
