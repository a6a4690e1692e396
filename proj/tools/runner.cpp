#include "runner.hpp"

#include <fstream>
#include <iostream>

#include "ionrot/analysis.hpp"
#include "ionrot/constants.hpp"
#include "ionrot/dynamics.hpp"
#include "ionrot/errors.hpp"
#include "ionrot/integrate.hpp"
#include "ionrot/pointcharge.hpp"
#include "ionrot/threepoint.hpp"
#include "ionrot/trap.hpp"
#include "ionrot/turn.hpp"
#include "ionrot/units.hpp"

namespace ionrot::cli {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

void write_sidecar(const ConfigReader& reader, const RunOptions& opt) {
  RawConfig resolved;
  resolved.entries = reader.resolved();
  write_file(opt.out_dir / "resolved_config.txt", resolved.serialize());
}

std::string table_filename(const std::string& base, TableFormat format) {
  return base + (format == TableFormat::Csv ? ".csv" : ".json");
}

void write_table(const Table& t, const std::string& base, const RunOptions& opt) {
  write_file(opt.out_dir / table_filename(base, opt.format), emit_table(t, opt.format));
}

struct TrapKeys {
  double omega_x = 0, omega_y = 0, omega_z = 0;  // rad/s
  double mass = 0, charge = 0;
  double rf_frequency = 0;
  double rf_amplitude = 0;  // provenance only

  TrapParams trap() const {
    return {rf_amplitude, rf_frequency, mass, charge, omega_x};
  }
};

TrapKeys read_trap(ConfigReader& r) {
  TrapKeys k;
  k.omega_x = units::rad_from_khz(r.require_double("omega_x_khz"));
  k.omega_y = units::rad_from_khz(r.require_double("omega_y_khz"));
  k.omega_z = units::rad_from_khz(r.require_double("omega_z_khz"));
  k.mass = units::kg_from_amu(r.get_double("ion_mass_amu", kCa40IonMassU));
  k.charge = r.get_double("ion_charge_e", 1.0) * kConstants.elementary_charge;
  k.rf_frequency = units::rad_from_mhz(r.get_double("rf_frequency_mhz", 10.125));
  k.rf_amplitude = r.get_double("rf_amplitude_v", 300.0);
  return k;
}

struct SwapKeys {
  TrapKeys trap;
  TurnProfile profile;
  DriveMode mode = DriveMode::Pseudopotential;
  int n_ions = 2;
  SwapSettings settings;
};

SwapKeys read_swap(ConfigReader& r) {
  SwapKeys k;
  k.trap = read_trap(r);
  const std::string prof = r.get_string("profile", "sine");
  const std::string mode = r.get_string("mode", "pseudopotential");
  const std::string dir = r.get_string("direction", "anticlockwise");
  k.profile.t_swap = units::seconds_from_us(r.require_double("t_swap_us"));
  k.n_ions = static_cast<int>(r.get_int("n_ions", 2));
  k.settings.settle_periods = r.get_double("settle_periods", 5.0);
  k.settings.measure_periods = r.get_double("measure_periods", 4.0);
  k.settings.dt = r.get_double("dt_ns", 0.0) * 1e-9;
  try {
    k.profile.kind = profile_from_string(prof);
  } catch (const std::invalid_argument& e) {
    r.add_issue(std::string("key 'profile': ") + e.what());
  }
  try {
    k.mode = mode_from_string(mode);
  } catch (const std::invalid_argument& e) {
    r.add_issue(std::string("key 'mode': ") + e.what());
  }
  if (dir == "clockwise")
    k.profile.direction = TurnDirection::Clockwise;
  else if (dir == "anticlockwise")
    k.profile.direction = TurnDirection::Anticlockwise;
  else
    r.add_issue("key 'direction': expected clockwise|anticlockwise");
  return k;
}

Table swap_result_table(double t_swap, const TurnProfile& profile, DriveMode mode,
                        const SwapResult& res) {
  Table t;
  t.columns = {"t_swap_s",       "profile",        "mode",
               "quanta",         "success",        "acquired_energy_j",
               "min_anisotropy", "max_offnull_m",  "runtime_s"};
  t.add_row({t_swap, to_string(profile.kind), to_string(mode), res.acquired_quanta,
             res.success, res.acquired_energy, res.min_anisotropy, res.max_offnull,
             res.runtime_seconds});
  return t;
}

Table trajectory_table(const Trajectory& traj) {
  Table t;
  t.columns = {"t", "ion", "x", "y", "z", "vx", "vy", "vz", "E_total"};
  for (size_t s = 0; s < traj.times.size(); ++s) {
    const auto& st = traj.states[s];
    for (size_t i = 0; i < st.size(); ++i) {
      t.add_row({traj.times[s], static_cast<std::int64_t>(i), st.positions[i].x(),
                 st.positions[i].y(), st.positions[i].z(), st.velocities[i].x(),
                 st.velocities[i].y(), st.velocities[i].z(), traj.energies[s]});
    }
  }
  return t;
}

std::vector<Vec3> parse_waypoints_um(const std::string& text, ConfigReader& r) {
  std::vector<Vec3> out;
  for (const auto& item : split_list(text)) {  // splits on ';' (and ',')
    std::istringstream in(item);
    double x = 0, y = 0;
    if (!(in >> x >> y)) {
      r.add_issue("key 'waypoints_um': expected 'x y' pairs separated by ';', got '" + item +
                  "'");
      continue;
    }
    out.emplace_back(units::meters_from_um(x), units::meters_from_um(y), 0.0);
  }
  return out;
}

}  // namespace

Table cmd_swap(const RawConfig& raw, const RunOptions& opt) {
  ConfigReader r(raw);
  SwapKeys k = read_swap(r);
  const long long stride = r.get_int("trajectory_stride", 64);
  r.finish();

  const TrapParams trap = k.trap.trap();
  const CurvatureTriple kappa =
      rf_curvature_from_secular(k.trap.omega_x, k.trap.omega_y, k.trap.omega_z, k.trap.mass);

  const SwapResult res = run_swap(k.n_ions, kappa, trap, k.profile, k.mode, k.settings);
  const Table result = swap_result_table(k.profile.t_swap, k.profile, k.mode, res);
  write_table(result, "swap_result", opt);

  // Trajectory export re-runs the same dynamics with decimated sampling.
  const RotatingQuadraticField pseudo(kappa, k.profile);
  std::unique_ptr<PotentialField> rf;
  const PotentialField* field = &pseudo;
  double dt = k.settings.dt;
  if (k.mode == DriveMode::FullRf) {
    const RfDrive drive =
        rf_drive_from_pseudocurvature(kappa.kappa_rf, trap.rf_frequency, trap.ion_mass,
                                      trap.ion_charge);
    rf = std::make_unique<FullRfTurnField>(kappa, k.profile, trap.ion_charge * drive.curvature,
                                           trap.rf_frequency);
    field = rf.get();
  }
  if (dt <= 0) dt = 0.9 * field->max_step(trap.ion_mass);

  IonSystemState initial;
  initial.mass = trap.ion_mass;
  initial.charge = trap.ion_charge;
  initial.positions = equilibrium_positions(pseudo, 0.0, k.n_ions, trap.ion_mass,
                                            trap.ion_charge);
  initial.velocities.assign(initial.positions.size(), Eigen::Vector3d::Zero());

  const double t_axial = units::kTwoPi / trap.reference_axial_frequency;
  const double t_end = k.profile.t_swap + k.settings.settle_periods * t_axial;
  IntegrateOptions io;
  io.sample_stride = stride;
  const Trajectory traj = integrate(*field, initial, t_end, dt, io);
  write_file(opt.out_dir / "trajectory.csv", emit_csv(trajectory_table(traj)));

  write_sidecar(r, opt);
  return result;
}

Table cmd_sweep(const RawConfig& raw, const RunOptions& opt) {
  ConfigReader r(raw);
  TrapKeys tk = read_trap(r);
  const double lo = units::seconds_from_us(r.require_double("t_swap_min_us"));
  const double hi = units::seconds_from_us(r.require_double("t_swap_max_us"));
  const int points = static_cast<int>(r.get_int("t_swap_points", 25));
  const auto profile_names = r.get_string_list("profiles", {"constant", "sine"});
  const auto mode_names = r.get_string_list("modes", {"pseudopotential", "full-rf"});
  const int n_ions = static_cast<int>(r.get_int("n_ions", 2));
  SwapSettings settings;
  settings.settle_periods = r.get_double("settle_periods", 5.0);
  settings.measure_periods = r.get_double("measure_periods", 4.0);

  std::vector<ProfileKind> profiles;
  std::vector<DriveMode> modes;
  for (const auto& p : profile_names) {
    try {
      profiles.push_back(profile_from_string(p));
    } catch (const std::invalid_argument& e) {
      r.add_issue(std::string("key 'profiles': ") + e.what());
    }
  }
  for (const auto& m : mode_names) {
    try {
      modes.push_back(mode_from_string(m));
    } catch (const std::invalid_argument& e) {
      r.add_issue(std::string("key 'modes': ") + e.what());
    }
  }
  if (points < 2) r.add_issue("key 't_swap_points': need at least 2");
  r.finish();

  const TrapParams trap = tk.trap();
  const CurvatureTriple kappa =
      rf_curvature_from_secular(tk.omega_x, tk.omega_y, tk.omega_z, tk.mass);
  const std::vector<double> grid = log_spaced(lo, hi, points);
  const std::vector<SweepCell> cells =
      heating_sweep(grid, profiles, modes, n_ions, kappa, trap, opt.jobs, settings);

  Table t;
  t.columns = {"t_swap_s", "profile", "mode", "quanta", "success"};
  for (const auto& c : cells)
    t.add_row({c.t_swap, to_string(c.profile), to_string(c.mode), c.result.acquired_quanta,
               c.result.success});
  write_table(t, "sweep", opt);
  write_sidecar(r, opt);
  return t;
}

Table cmd_design(const RawConfig& raw, const RunOptions& opt) {
  ConfigReader r(raw);
  const double lo = r.get_double("aspect_min", 0.2);
  const double hi = r.get_double("aspect_max", 5.0);
  const int points = static_cast<int>(r.get_int("aspect_points", 97));
  const double v_max = r.get_double("v_max", 1.0);
  if (!(lo > 0 && hi > lo)) r.add_issue("aspect range: need 0 < aspect_min < aspect_max");
  if (points < 2) r.add_issue("key 'aspect_points': need at least 2");
  r.finish();

  const double norm = transverse_strength(1.0, v_max);
  Table t;
  t.columns = {"aspect", "charge_ratio", "transverse_strength_norm", "diagonal_strength_norm"};
  for (int i = 0; i < points; ++i) {
    const double a = lo + (hi - lo) * i / (points - 1.0);
    t.add_row({a, charge_ratio(a), transverse_strength(a, v_max) / norm,
               diagonal_strength(a, v_max) / norm});
  }
  write_table(t, "design", opt);
  write_sidecar(r, opt);
  return t;
}

Table cmd_zigzag(const RawConfig& raw, const RunOptions& opt) {
  ConfigReader r(raw);
  const int n_min = static_cast<int>(r.get_int("n_min", 2));
  const int n_max = static_cast<int>(r.get_int("n_max", 10));
  if (n_min < 2 || n_max < n_min || n_max > 20)
    r.add_issue("need 2 <= n_min <= n_max <= 20");
  r.finish();

  Table t;
  t.columns = {"n_ions", "critical_ratio"};
  for (int n = n_min; n <= n_max; ++n)
    t.add_row({static_cast<std::int64_t>(n), zigzag_critical_ratio(n)});
  write_table(t, "zigzag", opt);
  write_sidecar(r, opt);
  return t;
}

Table cmd_barrier(const RawConfig& raw, const RunOptions& opt) {
  ConfigReader r(raw);
  TrapKeys tk = read_trap(r);
  const double offset = units::meters_from_um(r.require_double("offset_um"));
  r.finish();

  const CurvatureTriple kappa =
      rf_curvature_from_secular(tk.omega_x, tk.omega_y, tk.omega_z, tk.mass);
  const double barrier = rf_barrier(kappa.kappa_rf, offset);
  Table t;
  t.columns = {"offset_um", "rf_radial_freq_khz", "kappa_rf_j_m2", "barrier_j", "barrier_mev"};
  t.add_row({units::um_from_meters(offset),
             units::khz_from_rad(std::sqrt(kappa.kappa_rf / tk.mass)), kappa.kappa_rf, barrier,
             units::mev_from_joule(barrier)});
  write_table(t, "barrier", opt);
  write_sidecar(r, opt);
  return t;
}

Table cmd_lossbound(const RawConfig& raw, const RunOptions& opt) {
  ConfigReader r(raw);
  LossExperiment exp;
  exp.exchanges_per_sequence = r.get_int("exchanges_per_sequence", 200);
  exp.sequences_observed = r.get_int("sequences_observed", 149);
  exp.trap_depth = units::joule_from_ev(r.get_double("trap_depth_ev", 1.0));
  exp.confidence = r.get_double("confidence", 0.99);
  r.finish();

  const LossBound b = loss_energy_bound(exp);
  Table t;
  t.columns = {"exchanges_per_sequence", "sequences_observed", "trap_depth_ev", "confidence",
               "mean_energy_bound_mev", "per_exchange_rate_mev"};
  t.add_row({exp.exchanges_per_sequence, exp.sequences_observed,
             exp.trap_depth / kConstants.elementary_charge, exp.confidence,
             units::mev_from_joule(b.mean_energy_bound),
             units::mev_from_joule(b.per_exchange_rate)});
  write_table(t, "lossbound", opt);
  write_sidecar(r, opt);
  return t;
}

Table cmd_threepoint(const RawConfig& raw, const RunOptions& opt) {
  ConfigReader r(raw);
  ThreePointParams params;
  params.endcap_distance = units::meters_from_um(r.get_double("endcap_distance_um", 200.0));
  params.lid_distance = units::meters_from_um(r.get_double("lid_distance_um", 400.0));
  params.axial_frequency = units::rad_from_khz(r.get_double("axial_freq_khz", 120.0));
  params.rf_radial_frequency = units::rad_from_khz(r.get_double("rf_radial_freq_khz", 300.0));
  params.z_split_fraction = r.get_double("z_split_fraction", 0.3);
  params.ion_mass = units::kg_from_amu(r.get_double("ion_mass_amu", kCa40IonMassU));
  params.ion_charge = r.get_double("ion_charge_e", 1.0) * kConstants.elementary_charge;

  const std::string waypoints_text =
      r.get_string("waypoints_um", "0 0; 60 22; 105 0; 60 -22; 0 0");
  const std::vector<Vec3> positions = parse_waypoints_um(waypoints_text, r);
  if (positions.size() < 2) r.add_issue("key 'waypoints_um': need at least two waypoints");

  ThreePointSettings settings;
  settings.leg_time = units::seconds_from_us(r.get_double("leg_time_us", 400.0));
  settings.dt = r.get_double("dt_ns", 0.0) * 1e-9;
  settings.settle_periods = r.get_double("settle_periods", 5.0);
  settings.measure_periods = r.get_double("measure_periods", 4.0);
  settings.escape_distance = units::meters_from_um(r.get_double("escape_um", 50.0));

  const int n_ions = static_cast<int>(r.get_int("n_ions", 2));
  const double jitter = 0.01 * r.get_double("jitter_percent", 1.0);
  const int reruns = static_cast<int>(r.get_int("reruns", 10));
  const unsigned long long seed = static_cast<unsigned long long>(r.get_int("seed", 12345));
  r.finish();

  const std::vector<Vec3> settings_list = settings_for_waypoints(params, positions);
  const ThreePointResult res = three_point_turn(params, settings_list, n_ions, settings);
  const EnsembleOutcome ens =
      three_point_ensemble(params, positions, n_ions, jitter, reruns, seed, settings);

  Table t;
  t.columns = {"success",          "quanta",           "min_anisotropy",
               "degenerate_path",  "ensemble_successes", "ensemble_runs",
               "ensemble_consistent"};
  t.add_row({res.swap.success, res.swap.acquired_quanta, res.swap.min_anisotropy,
             res.degenerate_path || ens.degenerate_path,
             static_cast<std::int64_t>(ens.successes),
             static_cast<std::int64_t>(ens.outcomes.size()), ens.consistent});
  write_table(t, "threepoint", opt);

  Table w;
  w.columns = {"index", "x_um", "y_um", "anisotropy"};
  for (size_t i = 0; i < positions.size(); ++i)
    w.add_row({static_cast<std::int64_t>(i), units::um_from_meters(positions[i].x()),
               units::um_from_meters(positions[i].y()), res.waypoint_anisotropy[i]});
  write_table(w, "waypoints", opt);
  write_sidecar(r, opt);
  return t;
}

int run_command(const std::string& name, const std::string& config_path, const RunOptions& opt) {
  try {
    const RawConfig raw = RawConfig::parse_file(config_path);
    if (name == "swap")
      cmd_swap(raw, opt);
    else if (name == "sweep")
      cmd_sweep(raw, opt);
    else if (name == "design")
      cmd_design(raw, opt);
    else if (name == "zigzag")
      cmd_zigzag(raw, opt);
    else if (name == "barrier")
      cmd_barrier(raw, opt);
    else if (name == "lossbound")
      cmd_lossbound(raw, opt);
    else if (name == "threepoint")
      cmd_threepoint(raw, opt);
    else {
      std::cerr << "unknown subcommand '" << name << "'\n";
      return 2;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace ionrot::cli
