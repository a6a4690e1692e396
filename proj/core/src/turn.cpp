#include "ionrot/turn.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "ionrot/constants.hpp"
#include "ionrot/dynamics.hpp"
#include "ionrot/errors.hpp"
#include "ionrot/integrate.hpp"
#include "ionrot/units.hpp"

namespace ionrot {

std::string to_string(ProfileKind kind) {
  return kind == ProfileKind::ConstantVelocity ? "constant" : "sine";
}
std::string to_string(DriveMode mode) {
  return mode == DriveMode::Pseudopotential ? "pseudopotential" : "full-rf";
}
ProfileKind profile_from_string(const std::string& s) {
  if (s == "constant") return ProfileKind::ConstantVelocity;
  if (s == "sine") return ProfileKind::SineVelocity;
  throw std::invalid_argument("unknown profile '" + s + "' (expected constant|sine)");
}
DriveMode mode_from_string(const std::string& s) {
  if (s == "pseudopotential") return DriveMode::Pseudopotential;
  if (s == "full-rf") return DriveMode::FullRf;
  throw std::invalid_argument("unknown mode '" + s + "' (expected pseudopotential|full-rf)");
}

RotatingQuadraticField one_point_turn_field(const CurvatureTriple& kappa,
                                            const TurnProfile& profile) {
  return RotatingQuadraticField(kappa, profile);
}

namespace {

// Trapezoid moving average over the last n_box steps (n_box+1 samples);
// cancels a pure drive-frequency tone exactly when n_box*dt is one period.
class PhaseSpaceBoxcar {
 public:
  PhaseSpaceBoxcar(int n_box, int n_ions) : n_box_(n_box) {
    buf_.assign(static_cast<size_t>(n_box + 1),
                std::vector<Eigen::Vector3d>(2 * n_ions, Eigen::Vector3d::Zero()));
  }

  void push(const IonSystemState& s) {
    auto& slot = buf_[head_];
    const size_t n = s.size();
    for (size_t i = 0; i < n; ++i) {
      slot[i] = s.positions[i];
      slot[n + i] = s.velocities[i];
    }
    head_ = (head_ + 1) % buf_.size();
    if (count_ < buf_.size()) ++count_;
  }

  bool full() const { return count_ == buf_.size(); }

  // Averaged positions+velocities, trapezoid weights across the buffer.
  std::vector<Eigen::Vector3d> average() const {
    const size_t m = buf_.size();
    std::vector<Eigen::Vector3d> acc(buf_[0].size(), Eigen::Vector3d::Zero());
    for (size_t k = 0; k < m; ++k) {
      const size_t idx = (head_ + k) % m;  // oldest first
      const double w = (k == 0 || k == m - 1) ? 0.5 : 1.0;
      for (size_t j = 0; j < acc.size(); ++j) acc[j] += w * buf_[idx][j];
    }
    for (auto& v : acc) v /= static_cast<double>(n_box_);
    return acc;
  }

 private:
  int n_box_;
  std::vector<std::vector<Eigen::Vector3d>> buf_;
  size_t head_ = 0;
  size_t count_ = 0;
};

// Secular energy sample of an averaged phase-space point against the
// pseudopotential reference field.
double secular_energy_sample(const std::vector<Eigen::Vector3d>& avg, int n_ions, double mass,
                             double charge, const PotentialField& reference, double t) {
  std::vector<Eigen::Vector3d> pos(avg.begin(), avg.begin() + n_ions);
  double e = coulomb_energy(pos, charge);
  for (int i = 0; i < n_ions; ++i) {
    e += reference.potential(pos[i], t);
    e += 0.5 * mass * avg[static_cast<size_t>(n_ions + i)].squaredNorm();
  }
  return e;
}

struct MeasuredRun {
  double mean_energy = 0;
  IonSystemState final_state;
  double max_offnull = 0;
};

// Steps a state from t_start through the measurement window, accumulating
// either instantaneous total energy (pseudopotential) or the secular energy
// of RF-cycle-averaged states (full-RF).
MeasuredRun run_and_measure(const PotentialField& field, const PotentialField& reference,
                            const IonSystemState& initial, double dt, int n_box,
                            double t_measure_begin, double t_measure_end, double t_turn_end) {
  VerletStepper stepper(field, initial, dt);
  const int n_ions = static_cast<int>(initial.size());
  const bool cycle_average = n_box > 1;
  PhaseSpaceBoxcar boxcar(std::max(n_box, 1), n_ions);

  MeasuredRun out;
  double sum = 0;
  long long count = 0;
  const double half_span = cycle_average ? 0.5 * n_box * dt : 0.0;

  boxcar.push(stepper.state());
  while (stepper.time() < t_measure_end - 0.5 * dt) {
    stepper.step();
    const double t = stepper.time();
    if (t <= t_turn_end) {
      for (const auto& p : stepper.state().positions)
        out.max_offnull = std::max(out.max_offnull, std::hypot(p.y(), p.z()));
    }
    if (cycle_average) {
      boxcar.push(stepper.state());
      const double t_center = t - half_span;
      if (boxcar.full() && t_center >= t_measure_begin && t_center <= t_measure_end) {
        sum += secular_energy_sample(boxcar.average(), n_ions, initial.mass, initial.charge,
                                     reference, t_center);
        ++count;
      }
    } else if (t >= t_measure_begin && t <= t_measure_end) {
      sum += stepper.total_energy();
      ++count;
    }
  }
  if (count == 0) throw NumericalError("run_and_measure: empty measurement window");
  out.mean_energy = sum / static_cast<double>(count);
  out.final_state = stepper.state();
  return out;
}

bool order_reversed(const IonSystemState& initial, const IonSystemState& final_state) {
  const size_t n = initial.size();
  std::vector<size_t> before(n), after(n);
  std::iota(before.begin(), before.end(), 0);
  std::iota(after.begin(), after.end(), 0);
  std::sort(before.begin(), before.end(), [&](size_t a, size_t b) {
    return initial.positions[a].x() < initial.positions[b].x();
  });
  std::sort(after.begin(), after.end(), [&](size_t a, size_t b) {
    return final_state.positions[a].x() < final_state.positions[b].x();
  });
  std::reverse(after.begin(), after.end());
  return before == after;
}

}  // namespace

SwapResult run_swap(int n_ions, const CurvatureTriple& kappa, const TrapParams& trap,
                    const TurnProfile& profile, DriveMode mode, const SwapSettings& settings) {
  const auto wall_start = std::chrono::steady_clock::now();
  trap.validate();
  profile.validate();
  if (n_ions < 1) throw std::invalid_argument("run_swap: n_ions must be >= 1");

  // Zig-zag safety: the in-plane eigenvalues are constant during a one-point
  // turn, so checking the static ratios covers all theta.
  if (n_ions >= 2) {
    const double critical = zigzag_critical_ratio(n_ions);
    const double ratio_y = std::sqrt(kappa.kappa_y() / kappa.kappa_x());
    const double ratio_z = std::sqrt(kappa.kappa_z() / kappa.kappa_x());
    if (ratio_y <= critical || ratio_z <= critical)
      throw NumericalError("run_swap: transverse/longitudinal ratio below the zig-zag bound");
  }

  const RotatingQuadraticField pseudo_field(kappa, profile);

  std::unique_ptr<FullRfTurnField> rf_field;
  int n_box = 1;
  double dt = settings.dt;
  if (mode == DriveMode::FullRf) {
    const RfDrive drive = rf_drive_from_pseudocurvature(kappa.kappa_rf, trap.rf_frequency,
                                                        trap.ion_mass, trap.ion_charge);
    rf_field = std::make_unique<FullRfTurnField>(kappa, profile,
                                                 trap.ion_charge * drive.curvature,
                                                 trap.rf_frequency);
    const double t_rf = units::kTwoPi / trap.rf_frequency;
    if (dt <= 0) {
      n_box = 64;
      while (t_rf / n_box > rf_field->max_step(trap.ion_mass)) n_box *= 2;
    } else {
      n_box = std::max(2, static_cast<int>(std::lround(t_rf / dt)));
    }
    dt = t_rf / n_box;
  } else if (dt <= 0) {
    dt = 0.9 * pseudo_field.max_step(trap.ion_mass);
  }

  const PotentialField& field =
      mode == DriveMode::FullRf ? static_cast<const PotentialField&>(*rf_field) : pseudo_field;

  const std::vector<Eigen::Vector3d> eq =
      equilibrium_positions(pseudo_field, 0.0, n_ions, trap.ion_mass, trap.ion_charge);

  IonSystemState initial;
  initial.mass = trap.ion_mass;
  initial.charge = trap.ion_charge;
  initial.time = 0.0;
  initial.positions = eq;
  initial.velocities.assign(eq.size(), Eigen::Vector3d::Zero());

  const double t_axial = units::kTwoPi / trap.reference_axial_frequency;
  const double t_settle = profile.t_swap + settings.settle_periods * t_axial;
  const double t_end = t_settle + settings.measure_periods * t_axial;

  const MeasuredRun run = run_and_measure(field, pseudo_field, initial, dt, n_box, t_settle,
                                          t_end, profile.t_swap);

  // Reference run: ions resting at the final equilibrium (identical to the
  // initial one: the half turn maps the trap onto itself). Starting it at
  // t_swap replays the exact measurement phase of the main run.
  IonSystemState resting = initial;
  resting.time = profile.t_swap;
  const MeasuredRun base = run_and_measure(field, pseudo_field, resting, dt, n_box, t_settle,
                                           t_end, profile.t_swap);

  SwapResult result;
  result.acquired_energy = run.mean_energy - base.mean_energy;
  result.acquired_quanta =
      energy_in_quanta(result.acquired_energy, trap.reference_axial_frequency);
  result.success = order_reversed(initial, run.final_state);
  result.max_offnull = run.max_offnull;

  double min_aniso = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 128; ++i) {
    const double t = profile.t_swap * i / 128.0;
    const QuadFormEigen e = eigen_decompose(pseudo_field.inplane_at(t));
    min_aniso = std::min(min_aniso, std::sqrt(e.hi / e.lo));
  }
  result.min_anisotropy = min_aniso;

  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return result;
}

std::vector<SweepCell> heating_sweep(const std::vector<double>& t_swaps,
                                     const std::vector<ProfileKind>& profiles,
                                     const std::vector<DriveMode>& modes, int n_ions,
                                     const CurvatureTriple& kappa, const TrapParams& trap,
                                     int jobs, const SwapSettings& settings) {
  if (t_swaps.empty() || profiles.empty() || modes.empty())
    throw std::invalid_argument("heating_sweep: empty grid");

  std::vector<SweepCell> cells;
  for (double t : t_swaps)
    for (ProfileKind p : profiles)
      for (DriveMode m : modes) cells.push_back({t, p, m, {}});

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto work = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        TurnProfile profile{cells[i].profile, cells[i].t_swap, TurnDirection::Anticlockwise};
        cells[i].result = run_swap(n_ions, kappa, trap, profile, cells[i].mode, settings);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return cells;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (!(lo > 0 && hi > lo) || n < 2)
    throw std::invalid_argument("log_spaced: need 0 < lo < hi and n >= 2");
  std::vector<double> out(static_cast<size_t>(n));
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = std::exp(la + (lb - la) * i / (n - 1.0));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> envelope5(const std::vector<double>& values) {
  std::vector<double> env(values.size());
  const long long n = static_cast<long long>(values.size());
  for (long long i = 0; i < n; ++i) {
    double m = values[static_cast<size_t>(i)];
    for (long long j = std::max<long long>(0, i - 2); j <= std::min(n - 1, i + 2); ++j)
      m = std::max(m, values[static_cast<size_t>(j)]);
    env[static_cast<size_t>(i)] = m;
  }
  return env;
}

}  // namespace ionrot
