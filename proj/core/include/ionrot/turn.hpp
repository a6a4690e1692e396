// One-point-turn execution: swap runs in pseudopotential or explicit-RF
// drive, heating sweeps over swap duration, and envelope extraction.
#pragma once

#include <string>
#include <vector>

#include "ionrot/fields.hpp"
#include "ionrot/state.hpp"
#include "ionrot/trap.hpp"

namespace ionrot {

enum class DriveMode { Pseudopotential, FullRf };

std::string to_string(ProfileKind kind);
std::string to_string(DriveMode mode);
ProfileKind profile_from_string(const std::string& s);
DriveMode mode_from_string(const std::string& s);

// The rotating-trap pseudopotential of a turn; requires kx < ky < kz.
RotatingQuadraticField one_point_turn_field(const CurvatureTriple& kappa,
                                            const TurnProfile& profile);

struct SwapResult {
  bool success = false;        // x-ordering exactly reversed
  double acquired_energy = 0;  // J, secular, baseline-subtracted
  double acquired_quanta = 0;  // acquired_energy / (hbar * omega_L)
  double min_anisotropy = 0;   // min over the turn of sqrt(lambda2/lambda1) in-plane

  // Diagnostics.
  double max_offnull = 0;      // m, max distance of any ion from the RF null (x-axis)
  double runtime_seconds = 0;  // wall clock of the underlying integration
};

struct SwapSettings {
  double dt = 0;              // s; 0 selects the field's own limit
  double settle_periods = 5;  // axial periods between end of ramp and measurement
  double measure_periods = 4; // axial periods of measurement window
};

// Ions start at rest at the t=0 equilibrium; the trap is rotated by half a
// turn per the profile; after a settling time the acquired secular energy is
// measured against a resting-ion reference run. In full-RF mode the
// pseudopotential's kappa_rf is replaced by the explicit quadrupole drive
// and the secular energy is evaluated on the RF-cycle-averaged phase space.
SwapResult run_swap(int n_ions, const CurvatureTriple& kappa, const TrapParams& trap,
                    const TurnProfile& profile, DriveMode mode, const SwapSettings& settings = {});

struct SweepCell {
  double t_swap = 0;
  ProfileKind profile = ProfileKind::SineVelocity;
  DriveMode mode = DriveMode::Pseudopotential;
  SwapResult result;
};

// One run_swap per (t_swap, profile, mode) combination; cells may be
// computed by `jobs` worker threads, output order is grid order regardless.
std::vector<SweepCell> heating_sweep(const std::vector<double>& t_swaps,
                                     const std::vector<ProfileKind>& profiles,
                                     const std::vector<DriveMode>& modes, int n_ions,
                                     const CurvatureTriple& kappa, const TrapParams& trap,
                                     int jobs = 1, const SwapSettings& settings = {});

// Log-spaced grid, inclusive of both endpoints.
std::vector<double> log_spaced(double lo, double hi, int n);

// Running max over a 5-point neighborhood (2 either side, clamped at ends).
std::vector<double> envelope5(const std::vector<double>& values);

}  // namespace ionrot
