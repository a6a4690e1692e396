// Classical N-ion statics: Coulomb energy assembly, equilibrium search,
// normal modes of the mass-weighted Hessian, and the linear-chain zig-zag
// threshold.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ionrot/fields.hpp"
#include "ionrot/state.hpp"

namespace ionrot {

double coulomb_energy(const std::vector<Eigen::Vector3d>& positions, double charge);

// Adds the pairwise Coulomb forces; contributions are accumulated
// action-reaction so the internal forces cancel exactly.
void add_coulomb_forces(const std::vector<Eigen::Vector3d>& positions, double charge,
                        std::vector<Eigen::Vector3d>& forces);

// Total potential energy (field + mutual Coulomb) of a configuration.
double configuration_energy(const PotentialField& field, double t,
                            const std::vector<Eigen::Vector3d>& positions, double charge);

// 3N gradient and Hessian of the configuration energy.
Eigen::VectorXd configuration_gradient(const PotentialField& field, double t,
                                       const std::vector<Eigen::Vector3d>& positions,
                                       double charge);
Eigen::MatrixXd configuration_hessian(const PotentialField& field, double t,
                                      const std::vector<Eigen::Vector3d>& positions,
                                      double charge);

struct EquilibriumOptions {
  int max_iterations = 300;
  double force_tolerance = 1e-18;          // N, per-component
  Eigen::Vector3d center_hint = Eigen::Vector3d::Zero();
};

// Damped-Newton minimisation of the configuration energy at fixed t,
// initialised from an equispaced guess along the local weak axis. Throws
// NumericalError on non-convergence or if the converged point is a saddle.
std::vector<Eigen::Vector3d> equilibrium_positions(const PotentialField& field, double t,
                                                   int n_ions, double mass, double charge,
                                                   const EquilibriumOptions& opts = {});

struct NormalModes {
  Eigen::VectorXd eigenvalues;   // of H/m, ascending; units (rad/s)^2
  Eigen::MatrixXd mode_vectors;  // columns, matching eigenvalue order
  bool stable = true;            // false if any eigenvalue is negative

  // Signed frequencies: sign(lambda) * sqrt(|lambda|).
  std::vector<double> frequencies() const;
};

NormalModes normal_modes(const PotentialField& field, double t,
                         const std::vector<Eigen::Vector3d>& equilibrium, double mass,
                         double charge);

// Critical transverse-to-longitudinal frequency ratio below which a linear
// chain of n ions buckles. Bisection on the lowest transverse eigenvalue of
// the dimensionless chain Hessian, to 1e-4. Valid for 2 <= n <= 20.
double zigzag_critical_ratio(int n_ions);

}  // namespace ionrot
