// Derived analyses: the survival-statistics energy bound and the two-ion
// separation/frequency relation.
#pragma once

#include "ionrot/constants.hpp"

namespace ionrot {

// Two-ion equilibrium separation d = (2 K q^2 / (m omega_l^2))^(1/3).
double separation_vs_frequency(double omega_l, double mass, double charge,
                               const PhysConstants& c = kConstants);

struct LossExperiment {
  long long exchanges_per_sequence = 200;
  long long sequences_observed = 149;
  double trap_depth = 0;   // J
  double confidence = 0.99;

  void validate() const;
};

struct LossBound {
  double mean_energy_bound = 0;   // J
  double per_exchange_rate = 0;   // J
};

// Regularized upper incomplete gamma Q(3/2, x), the tail of the 3D thermal
// energy distribution: P(E > x kT) for E ~ Gamma(3/2, kT).
double gamma_q_3half(double x);

// Thermal survival bound: after each sequence the motional energy is drawn
// from a 3D Maxwell-Boltzmann distribution (mean 3/2 kT); the per-sequence
// escape probability is p = Q(3/2, depth/kT). The bound is the largest mean
// energy whose survival probability over all observed sequences,
// (1-p)^sequences, still reaches the stated confidence; the per-exchange
// rate divides it by the sequence length (linear heating assumption).
// Solved by bisection on kT. Throws NumericalError on bracket failure.
LossBound loss_energy_bound(const LossExperiment& exp);

}  // namespace ionrot
