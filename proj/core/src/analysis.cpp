#include "ionrot/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "ionrot/errors.hpp"

namespace ionrot {

double separation_vs_frequency(double omega_l, double mass, double charge,
                               const PhysConstants& c) {
  if (!(omega_l > 0)) throw std::invalid_argument("separation_vs_frequency: omega_l must be > 0");
  return std::cbrt(2.0 * c.coulomb_constant * charge * charge / (mass * omega_l * omega_l));
}

void LossExperiment::validate() const {
  if (exchanges_per_sequence < 1 || sequences_observed < 1)
    throw std::invalid_argument("LossExperiment: counts must be >= 1");
  if (!(confidence > 0 && confidence < 1))
    throw std::invalid_argument("LossExperiment: confidence must be in (0, 1)");
  if (!(trap_depth > 0)) throw std::invalid_argument("LossExperiment: trap_depth must be > 0");
}

double gamma_q_3half(double x) {
  if (x < 0) throw std::invalid_argument("gamma_q_3half: x must be >= 0");
  // Gamma(3/2, x)/Gamma(3/2) = erfc(sqrt(x)) + 2 sqrt(x/pi) e^{-x}
  constexpr double two_over_sqrt_pi = 1.1283791670955126;
  const double s = std::sqrt(x);
  return std::erfc(s) + two_over_sqrt_pi * s * std::exp(-x);
}

LossBound loss_energy_bound(const LossExperiment& exp) {
  exp.validate();
  const double n = static_cast<double>(exp.sequences_observed);

  // Largest per-sequence escape probability consistent with the observed
  // survival at the stated confidence.
  const double p_max = 1.0 - std::pow(exp.confidence, 1.0 / n);

  // Invert p = Q(3/2, depth/kT) for kT by bisection on x = depth/kT.
  // Q is decreasing in x, so p <= p_max means x >= x_star.
  double lo = 1e-12, hi = 1e4;
  if (!(gamma_q_3half(lo) > p_max) || !(gamma_q_3half(hi) < p_max))
    throw NumericalError("loss_energy_bound: no root in bracket (degenerate depth/confidence)");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (gamma_q_3half(mid) > p_max)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-12 * hi) break;
  }
  const double x_star = 0.5 * (lo + hi);
  const double k_t = exp.trap_depth / x_star;

  LossBound out;
  out.mean_energy_bound = 1.5 * k_t;
  out.per_exchange_rate = out.mean_energy_bound / static_cast<double>(exp.exchanges_per_sequence);
  return out;
}

}  // namespace ionrot
