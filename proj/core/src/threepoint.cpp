#include "ionrot/threepoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "ionrot/constants.hpp"
#include "ionrot/dynamics.hpp"
#include "ionrot/errors.hpp"
#include "ionrot/integrate.hpp"
#include "ionrot/units.hpp"

namespace ionrot {

void ThreePointParams::validate() const {
  if (!(endcap_distance > 0 && lid_distance > 0))
    throw std::invalid_argument("ThreePointParams: electrode distances must be > 0");
  if (!(axial_frequency > 0 && rf_radial_frequency > axial_frequency))
    throw std::invalid_argument(
        "ThreePointParams: need 0 < axial_frequency < rf_radial_frequency");
  if (!(z_split_fraction > 0 && z_split_fraction < 1))
    throw std::invalid_argument("ThreePointParams: z_split_fraction must be in (0, 1)");
  if (!(ion_mass > 0 && ion_charge > 0))
    throw std::invalid_argument("ThreePointParams: ion mass and charge must be > 0");
}

ThreePointField::ThreePointField(const ThreePointParams& params) : params_(params) {
  params.validate();
  const double m = params.ion_mass, q = params.ion_charge;
  const double k = kConstants.coulomb_constant;
  kappa_rf_ = m * params.rf_radial_frequency * params.rf_radial_frequency;

  // Solve the charge weights from the origin curvature targets:
  //   kappa_x(0) = 2*S0 - 2*B = m * axial_frequency^2
  //   kappa_z(0) - kappa_y(0) = 6*B = z_split_fraction * kappa_rf
  // with S0 = 2*K*Qe*q/L^3 (endcap pair) and B = K*Ql*q/H^3 (lid pair).
  const double b_hat = params.z_split_fraction * kappa_rf_ / 6.0;
  const double s0 = 0.5 * (m * params.axial_frequency * params.axial_frequency + 2.0 * b_hat);
  const double l = params.endcap_distance, h = params.lid_distance;
  const double q_end = s0 * l * l * l / (2.0 * k * q);
  const double q_lid = b_hat * h * h * h / (k * q);

  charges_ = {{Vec3(l, 0, 0), q_end},
              {Vec3(-l, 0, 0), q_end},
              {Vec3(0, 0, h), q_lid},
              {Vec3(0, 0, -h), q_lid}};

  // The y confinement must survive at the origin.
  if (!(kappa_rf_ - s0 - 2.0 * b_hat > 0))
    throw std::invalid_argument("ThreePointField: no transverse confinement at the origin");

  // Step-limit probe: stiffest in-plane curvature over the on-axis working
  // region (the dynamics never leaves it thanks to the escape guard).
  kappa_probe_ = 0;
  for (int i = -40; i <= 40; ++i) {
    const Vec3 p(0.85 * l * i / 40.0, 0.0, 0.0);
    const Eigen::Matrix3d hess = hessian(p, 0.0);
    kappa_probe_ = std::max(kappa_probe_, std::max(hess(0, 0), std::max(hess(1, 1), hess(2, 2))));
  }
  kappa_probe_ *= 2.0;  // margin for off-axis excursions
}

void ThreePointField::set_schedule(const std::vector<Vec3>& settings, double leg_time) {
  if (settings.empty()) throw std::invalid_argument("ThreePointField: empty schedule");
  if (!(leg_time > 0)) throw std::invalid_argument("ThreePointField: leg_time must be > 0");
  sched_times_.clear();
  sched_fields_ = settings;
  for (size_t i = 0; i < settings.size(); ++i)
    sched_times_.push_back(leg_time * static_cast<double>(i));
}

Vec3 ThreePointField::steering_at(double t) const {
  if (sched_fields_.empty()) return Vec3::Zero();
  if (t <= sched_times_.front()) return sched_fields_.front();
  if (t >= sched_times_.back()) return sched_fields_.back();
  const auto it = std::upper_bound(sched_times_.begin(), sched_times_.end(), t);
  const size_t hi = static_cast<size_t>(it - sched_times_.begin());
  const size_t lo = hi - 1;
  const double u = (t - sched_times_[lo]) / (sched_times_[hi] - sched_times_[lo]);
  return sched_fields_[lo] + u * (sched_fields_[hi] - sched_fields_[lo]);
}

double ThreePointField::schedule_end() const {
  return sched_times_.empty() ? 0.0 : sched_times_.back();
}

double ThreePointField::potential(const Eigen::Vector3d& p, double t) const {
  const double q = params_.ion_charge;
  double u = q * potential_at(charges_, p);
  u += 0.5 * kappa_rf_ * (p.y() * p.y() + p.z() * p.z());
  u -= q * steering_at(t).dot(p);
  return u;
}

Eigen::Vector3d ThreePointField::force(const Eigen::Vector3d& p, double t) const {
  const double q = params_.ion_charge;
  // E = -grad(phi), so the force on the ion is q*E.
  Eigen::Vector3d f = q * field_at(charges_, p);
  f.y() -= kappa_rf_ * p.y();
  f.z() -= kappa_rf_ * p.z();
  f += q * steering_at(t);
  return f;
}

Eigen::Matrix3d ThreePointField::hessian(const Eigen::Vector3d& p, double t) const {
  (void)t;
  Eigen::Matrix3d h = params_.ion_charge * hessian_at(charges_, p);
  h(1, 1) += kappa_rf_;
  h(2, 2) += kappa_rf_;
  return h;
}

double ThreePointField::max_step(double mass) const {
  const double omega = std::sqrt(kappa_probe_ / mass);
  return units::kTwoPi / omega / 200.0;
}

Vec3 ThreePointField::background_gradient(const Vec3& p) const {
  const double q = params_.ion_charge;
  Vec3 g = -q * field_at(charges_, p);
  g.y() += kappa_rf_ * p.y();
  g.z() += kappa_rf_ * p.z();
  return g;
}

Vec3 steering_setting_for_minimum(const ThreePointField& field, const Vec3& p) {
  return field.background_gradient(p) / field.params().ion_charge;
}

Vec3 find_local_minimum(const PotentialField& field, double t, const Vec3& hint) {
  constexpr double trust = 2e-5;  // m, per-iteration step bound
  Vec3 p = hint;
  bool converged = false;
  for (int iter = 0; iter < 200; ++iter) {
    const Vec3 g = -field.force(p, t);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(field.hessian(p, t));
    // Modified Newton: clamp the spectrum so the step always descends.
    const double floor = 0.05 * std::abs(es.eigenvalues()(2)) + 1e-300;
    const Eigen::Vector3d lam = es.eigenvalues().cwiseMax(floor);
    Vec3 step = es.eigenvectors() * (es.eigenvectors().transpose() * (-g)).cwiseQuotient(lam);
    if (step.norm() > trust) step *= trust / step.norm();
    p += step;
    if (step.norm() < 1e-13) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NumericalError("find_local_minimum: no convergence (minimum lost)");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(field.hessian(p, t));
  if (!(es.eigenvalues()(0) > 0) || (-field.force(p, t)).norm() > 1e-19)
    throw NumericalError("find_local_minimum: converged point is not a minimum");
  return p;
}

double local_inplane_anisotropy(const PotentialField& field, double t, const Vec3& at) {
  const Eigen::Matrix3d h = field.hessian(at, t);
  const QuadForm2D q{h(0, 0), h(0, 1), h(1, 1)};
  const QuadFormEigen e = eigen_decompose(q);
  if (!(e.lo > 0)) throw NumericalError("local_inplane_anisotropy: not confining in-plane");
  return std::sqrt(e.hi / e.lo);
}

namespace {

struct PathScan {
  double min_anisotropy = std::numeric_limits<double>::infinity();
  bool degenerate = false;
  Vec3 final_minimum = Vec3::Zero();
  std::vector<Vec3> at_times;  // tracked minima at the requested times
};

// Tracks the instantaneous minimum over the whole schedule and detects the
// on-axis anisotropy collapse that makes the direct path non-deterministic.
PathScan scan_path(const ThreePointField& field, const Vec3& start_hint, double t_end,
                   const std::vector<double>& record_times = {}) {
  PathScan scan;
  Vec3 p = find_local_minimum(field, 0.0, start_hint);
  scan.at_times.assign(record_times.size(), Vec3::Zero());
  size_t next_record = 0;
  const int n = 512;
  for (int i = 0; i <= n; ++i) {
    const double t = t_end * i / n;
    while (next_record < record_times.size() && record_times[next_record] <= t) {
      p = find_local_minimum(field, record_times[next_record], p);
      scan.at_times[next_record] = p;
      ++next_record;
    }
    p = find_local_minimum(field, t, p);
    const double a = local_inplane_anisotropy(field, t, p);
    scan.min_anisotropy = std::min(scan.min_anisotropy, a);
    if (a < 1.02 && std::abs(p.y()) < 1e-8) scan.degenerate = true;
  }
  while (next_record < record_times.size()) {
    p = find_local_minimum(field, record_times[next_record], p);
    scan.at_times[next_record] = p;
    ++next_record;
  }
  scan.final_minimum = p;
  return scan;
}

}  // namespace

ThreePointResult three_point_turn(const ThreePointParams& params,
                                  const std::vector<Vec3>& waypoint_settings, int n_ions,
                                  const ThreePointSettings& settings) {
  if (waypoint_settings.size() < 2)
    throw std::invalid_argument("three_point_turn: need at least two waypoints");
  if (n_ions < 2) throw std::invalid_argument("three_point_turn: need at least two ions");

  ThreePointField field(params);
  field.set_schedule(waypoint_settings, settings.leg_time);
  const double t_ramp = field.schedule_end();

  // Static path diagnostics (minimum existence, anisotropy, degeneracy).
  Vec3 start_min = find_local_minimum(field, 0.0, Vec3::Zero());
  std::vector<double> waypoint_times;
  for (size_t i = 0; i < waypoint_settings.size(); ++i)
    waypoint_times.push_back(settings.leg_time * static_cast<double>(i));
  const PathScan scan = scan_path(field, start_min, t_ramp, waypoint_times);

  ThreePointResult result;
  result.degenerate_path = scan.degenerate;
  for (size_t i = 0; i < waypoint_settings.size(); ++i) {
    result.waypoint_anisotropy.push_back(
        local_inplane_anisotropy(field, waypoint_times[i], scan.at_times[i]));
  }

  // Dynamics.
  EquilibriumOptions eq_opts;
  eq_opts.center_hint = start_min;
  const std::vector<Vec3> eq =
      equilibrium_positions(field, 0.0, n_ions, params.ion_mass, params.ion_charge, eq_opts);

  IonSystemState initial;
  initial.mass = params.ion_mass;
  initial.charge = params.ion_charge;
  initial.time = 0.0;
  initial.positions = eq;
  initial.velocities.assign(eq.size(), Eigen::Vector3d::Zero());

  const double dt = settings.dt > 0 ? settings.dt : 0.9 * field.max_step(params.ion_mass);
  const double t_axial = units::kTwoPi / params.axial_frequency;
  const double t_settle = t_ramp + settings.settle_periods * t_axial;
  const double t_end = t_settle + settings.measure_periods * t_axial;

  VerletStepper stepper(field, initial, dt);
  Vec3 track = start_min;
  double e_sum = 0;
  long long e_count = 0;
  long long step_index = 0;
  double max_offnull = 0;
  while (stepper.time() < t_end - 0.5 * dt) {
    stepper.step();
    ++step_index;
    if (step_index % 16 == 0) {
      track = find_local_minimum(field, stepper.time(), track);
      for (const auto& p : stepper.state().positions) {
        if ((p - track).norm() > settings.escape_distance)
          throw NumericalError("three_point_turn: ions escaped the local minimum");
        max_offnull = std::max(max_offnull, std::hypot(p.y(), p.z()));
      }
    }
    if (stepper.time() >= t_settle) {
      e_sum += stepper.total_energy();
      ++e_count;
    }
  }

  // Resting reference at the final minimum for the energy baseline.
  IonSystemState resting;
  resting.mass = params.ion_mass;
  resting.charge = params.ion_charge;
  resting.time = t_ramp;
  EquilibriumOptions final_opts;
  final_opts.center_hint = scan.final_minimum;
  resting.positions = equilibrium_positions(field, t_end, n_ions, params.ion_mass,
                                            params.ion_charge, final_opts);
  resting.velocities.assign(resting.positions.size(), Eigen::Vector3d::Zero());
  const double e_base =
      configuration_energy(field, t_end, resting.positions, params.ion_charge);

  result.swap.acquired_energy = e_sum / static_cast<double>(e_count) - e_base;
  result.swap.acquired_quanta = result.swap.acquired_energy /
                                (kConstants.reduced_planck * params.axial_frequency);
  result.swap.min_anisotropy = scan.min_anisotropy;
  result.swap.max_offnull = max_offnull;
  result.swap.success = [&]() {
    std::vector<size_t> before(initial.size()), after(initial.size());
    for (size_t i = 0; i < before.size(); ++i) before[i] = after[i] = i;
    const auto& fin = stepper.state().positions;
    std::sort(before.begin(), before.end(),
              [&](size_t a, size_t b) { return initial.positions[a].x() < initial.positions[b].x(); });
    std::sort(after.begin(), after.end(),
              [&](size_t a, size_t b) { return fin[a].x() < fin[b].x(); });
    std::reverse(after.begin(), after.end());
    return before == after;
  }();
  return result;
}

std::vector<Vec3> settings_for_waypoints(const ThreePointParams& params,
                                         const std::vector<Vec3>& positions) {
  ThreePointField field(params);
  std::vector<Vec3> settings;
  settings.reserve(positions.size());
  for (const auto& p : positions) settings.push_back(steering_setting_for_minimum(field, p));
  return settings;
}

namespace {
// Portable uniform double in [-1, 1) from the standardised mt19937_64.
double signed_unit(std::mt19937_64& rng) {
  return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}
}  // namespace

EnsembleOutcome three_point_ensemble(const ThreePointParams& params,
                                     const std::vector<Vec3>& waypoint_positions, int n_ions,
                                     double jitter_fraction, int n_runs, unsigned long long seed,
                                     const ThreePointSettings& settings) {
  double extent = 0;
  for (const auto& p : waypoint_positions) extent = std::max(extent, p.norm());
  if (!(extent > 0)) throw std::invalid_argument("three_point_ensemble: degenerate waypoints");

  std::mt19937_64 rng(seed);
  EnsembleOutcome out;

  // Degeneracy is a property of the nominal path, judged before jittering.
  {
    ThreePointField field(params);
    field.set_schedule(settings_for_waypoints(params, waypoint_positions), settings.leg_time);
    const Vec3 m0 = find_local_minimum(field, 0.0, Vec3::Zero());
    out.degenerate_path = scan_path(field, m0, field.schedule_end()).degenerate;
  }

  for (int run = 0; run < n_runs; ++run) {
    std::vector<Vec3> jittered = waypoint_positions;
    for (auto& p : jittered) {
      p.x() += jitter_fraction * extent * signed_unit(rng);
      p.y() += jitter_fraction * extent * signed_unit(rng);
    }
    const std::vector<Vec3> sets = settings_for_waypoints(params, jittered);
    bool success = false;
    try {
      const ThreePointResult r = three_point_turn(params, sets, n_ions, settings);
      success = r.swap.success;
    } catch (const NumericalError&) {
      success = false;  // escapes / lost minima count as failed reorderings
    }
    out.outcomes.push_back(success);
    if (success) ++out.successes;
  }
  out.consistent = true;
  for (bool b : out.outcomes)
    if (b != out.outcomes.front()) out.consistent = false;
  return out;
}

}  // namespace ionrot
