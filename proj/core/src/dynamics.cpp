#include "ionrot/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "ionrot/constants.hpp"
#include "ionrot/errors.hpp"

namespace ionrot {

double coulomb_energy(const std::vector<Eigen::Vector3d>& positions, double charge) {
  const double kq2 = kConstants.coulomb_constant * charge * charge;
  double e = 0;
  for (size_t i = 0; i < positions.size(); ++i)
    for (size_t j = i + 1; j < positions.size(); ++j)
      e += kq2 / (positions[i] - positions[j]).norm();
  return e;
}

void add_coulomb_forces(const std::vector<Eigen::Vector3d>& positions, double charge,
                        std::vector<Eigen::Vector3d>& forces) {
  const double kq2 = kConstants.coulomb_constant * charge * charge;
  for (size_t i = 0; i < positions.size(); ++i) {
    for (size_t j = i + 1; j < positions.size(); ++j) {
      const Eigen::Vector3d d = positions[i] - positions[j];
      const double r = d.norm();
      const Eigen::Vector3d f = kq2 * d / (r * r * r);
      forces[i] += f;
      forces[j] -= f;
    }
  }
}

double configuration_energy(const PotentialField& field, double t,
                            const std::vector<Eigen::Vector3d>& positions, double charge) {
  double e = coulomb_energy(positions, charge);
  for (const auto& p : positions) e += field.potential(p, t);
  return e;
}

Eigen::VectorXd configuration_gradient(const PotentialField& field, double t,
                                       const std::vector<Eigen::Vector3d>& positions,
                                       double charge) {
  const size_t n = positions.size();
  std::vector<Eigen::Vector3d> forces(n, Eigen::Vector3d::Zero());
  for (size_t i = 0; i < n; ++i) forces[i] = field.force(positions[i], t);
  add_coulomb_forces(positions, charge, forces);
  Eigen::VectorXd g(3 * n);
  for (size_t i = 0; i < n; ++i) g.segment<3>(3 * i) = -forces[i];
  return g;
}

Eigen::MatrixXd configuration_hessian(const PotentialField& field, double t,
                                      const std::vector<Eigen::Vector3d>& positions,
                                      double charge) {
  const size_t n = positions.size();
  const double kq2 = kConstants.coulomb_constant * charge * charge;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  for (size_t i = 0; i < n; ++i)
    h.block<3, 3>(3 * i, 3 * i) = field.hessian(positions[i], t);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const Eigen::Vector3d d = positions[i] - positions[j];
      const double r = d.norm();
      const Eigen::Matrix3d blk =
          kq2 * (3.0 * d * d.transpose() / (r * r) - Eigen::Matrix3d::Identity()) / (r * r * r);
      h.block<3, 3>(3 * i, 3 * i) += blk;
      h.block<3, 3>(3 * j, 3 * j) += blk;
      h.block<3, 3>(3 * i, 3 * j) -= blk;
      h.block<3, 3>(3 * j, 3 * i) -= blk;
    }
  }
  return h;
}

namespace {

// Equispaced string along the local weak axis, spaced by the two-ion
// equilibrium length scale of that axis.
std::vector<Eigen::Vector3d> initial_guess(const PotentialField& field, double t, int n,
                                           double charge, const Eigen::Vector3d& center) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(field.hessian(center, t));
  const Eigen::Vector3d axis = es.eigenvectors().col(0);
  const double kappa = std::max(es.eigenvalues()(0), 1e-30);
  const double kq2 = kConstants.coulomb_constant * charge * charge;
  const double scale = std::cbrt(2.0 * kq2 / kappa);
  std::vector<Eigen::Vector3d> pos(n);
  for (int i = 0; i < n; ++i)
    pos[i] = center + axis * scale * (i - 0.5 * (n - 1));
  return pos;
}

}  // namespace

std::vector<Eigen::Vector3d> equilibrium_positions(const PotentialField& field, double t,
                                                   int n_ions, double mass, double charge,
                                                   const EquilibriumOptions& opts) {
  (void)mass;
  if (n_ions < 1) throw std::invalid_argument("equilibrium_positions: n_ions must be >= 1");

  std::vector<Eigen::Vector3d> pos = initial_guess(field, t, n_ions, charge, opts.center_hint);
  const int n3 = 3 * n_ions;
  double lambda = 0.0;

  Eigen::VectorXd g = configuration_gradient(field, t, pos, charge);
  double gnorm = g.cwiseAbs().maxCoeff();

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (gnorm <= opts.force_tolerance && iter > 0) break;
    Eigen::MatrixXd h = configuration_hessian(field, t, pos, charge);
    if (lambda > 0) h += lambda * Eigen::MatrixXd::Identity(n3, n3);

    Eigen::VectorXd step;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
    if (ldlt.info() == Eigen::Success) {
      step = ldlt.solve(-g);
    } else {
      step = -g;  // gradient fallback
    }

    std::vector<Eigen::Vector3d> trial(pos);
    double shrink = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 30; ++ls) {
      for (int i = 0; i < n_ions; ++i)
        trial[i] = pos[i] + shrink * step.segment<3>(3 * i);
      const Eigen::VectorXd gt = configuration_gradient(field, t, trial, charge);
      const double norm_trial = gt.cwiseAbs().maxCoeff();
      if (norm_trial < gnorm || norm_trial <= opts.force_tolerance) {
        pos = trial;
        g = gt;
        gnorm = norm_trial;
        improved = true;
        break;
      }
      shrink *= 0.5;
    }
    if (improved) {
      lambda = std::max(lambda * 0.25, 0.0);
      if (lambda < 1e-30) lambda = 0.0;
    } else {
      const double scale = configuration_hessian(field, t, pos, charge).diagonal().cwiseAbs().maxCoeff();
      lambda = (lambda == 0.0) ? 1e-3 * scale : lambda * 10.0;
      if (lambda > 1e12 * scale)
        throw NumericalError("equilibrium_positions: no descent direction found");
    }
  }

  if (gnorm > opts.force_tolerance)
    throw NumericalError("equilibrium_positions: did not converge within iteration budget");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      configuration_hessian(field, t, pos, charge));
  const double min_eig = es.eigenvalues()(0);
  const double max_eig = es.eigenvalues()(n3 - 1);
  if (min_eig <= 1e-10 * std::abs(max_eig))
    throw NumericalError("equilibrium_positions: converged to a saddle (Hessian not positive definite)");
  return pos;
}

std::vector<double> NormalModes::frequencies() const {
  std::vector<double> f(eigenvalues.size());
  for (int i = 0; i < eigenvalues.size(); ++i) {
    const double lam = eigenvalues(i);
    f[i] = lam >= 0 ? std::sqrt(lam) : -std::sqrt(-lam);
  }
  return f;
}

NormalModes normal_modes(const PotentialField& field, double t,
                         const std::vector<Eigen::Vector3d>& equilibrium, double mass,
                         double charge) {
  const Eigen::MatrixXd h = configuration_hessian(field, t, equilibrium, charge) / mass;
  if (!h.allFinite()) throw NumericalError("normal_modes: Hessian is not finite");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  NormalModes m;
  m.eigenvalues = es.eigenvalues();
  m.mode_vectors = es.eigenvectors();
  const double scale = m.eigenvalues.cwiseAbs().maxCoeff();
  m.stable = m.eigenvalues(0) > -1e-12 * scale;
  return m;
}

namespace {

// Dimensionless linear-chain statics: unit mass, unit axial curvature,
// unit Coulomb coefficient. Axial positions from Newton iteration.
std::vector<double> chain_positions(int n) {
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) u[i] = 1.3 * (i - 0.5 * (n - 1));
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::VectorXd g(n);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      g(i) = u[i];
      h(i, i) = 1.0;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double d = u[i] - u[j];
        const double s = d > 0 ? 1.0 : -1.0;
        g(i) -= s / (d * d);
        g(j) += s / (d * d);
        const double k = 2.0 / std::abs(d * d * d);
        h(i, i) += k;
        h(j, j) += k;
        h(i, j) -= k;
        h(j, i) -= k;
      }
    }
    const Eigen::VectorXd step = h.ldlt().solve(-g);
    double damp = 1.0;
    const double max_step = step.cwiseAbs().maxCoeff();
    if (max_step > 0.5) damp = 0.5 / max_step;
    for (int i = 0; i < n; ++i) u[i] += damp * step(i);
    if (g.cwiseAbs().maxCoeff() < 1e-14 && damp == 1.0) break;
  }
  return u;
}

// Lowest eigenvalue of the transverse chain Hessian at frequency ratio r.
double lowest_transverse_eigenvalue(const std::vector<double>& u, double r) {
  const int n = static_cast<int>(u.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = r * r;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double inv_d3 = 1.0 / std::pow(std::abs(u[i] - u[j]), 3);
      a(i, i) -= inv_d3;
      a(j, j) -= inv_d3;
      a(i, j) += inv_d3;
      a(j, i) += inv_d3;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  return es.eigenvalues()(0);
}

}  // namespace

double zigzag_critical_ratio(int n_ions) {
  if (n_ions < 2 || n_ions > 20)
    throw std::invalid_argument("zigzag_critical_ratio: n_ions must be in [2, 20]");
  const std::vector<double> u = chain_positions(n_ions);
  double lo = 0.5, hi = 8.0;
  if (lowest_transverse_eigenvalue(u, hi) <= 0)
    throw NumericalError("zigzag_critical_ratio: bracket failure");
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    if (lowest_transverse_eigenvalue(u, mid) > 0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace ionrot
