// In-plane quadratic-form algebra for trap rotation.
//
// A 2D quadratic potential is U = 1/2 (x,y) Q (x,y)^T with Q symmetric.
// Rotating the weak trap axis by theta while keeping both in-plane
// curvatures fixed requires adding
//
//   dQ(theta) = Q_trans * (1 - cos 2theta)/2  -  Q_diag * (sin 2theta)/2
//
// where Q_trans = dk*diag(1,-1), Q_diag = dk*[[0,1],[1,0]] and
// dk = kappa_y - kappa_x. Both amplitudes oscillate at twice the rotation
// angle; this is the waveform the steering electrodes have to play.
#pragma once

#include <cmath>
#include <numbers>

namespace ionrot {

struct Mat2 {
  double m00 = 0, m01 = 0, m10 = 0, m11 = 0;

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
  }
};

// Anticlockwise rotation by theta.
inline Mat2 rotation_matrix(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c, -s, s, c};
}

// Symmetric 2x2 quadratic form; entries are energy curvatures in J/m^2.
struct QuadForm2D {
  double qxx = 0, qxy = 0, qyy = 0;

  double trace() const { return qxx + qyy; }

  friend QuadForm2D operator+(const QuadForm2D& a, const QuadForm2D& b) {
    return {a.qxx + b.qxx, a.qxy + b.qxy, a.qyy + b.qyy};
  }
  friend QuadForm2D operator-(const QuadForm2D& a, const QuadForm2D& b) {
    return {a.qxx - b.qxx, a.qxy - b.qxy, a.qyy - b.qyy};
  }
  friend QuadForm2D operator*(double s, const QuadForm2D& q) {
    return {s * q.qxx, s * q.qxy, s * q.qyy};
  }
};

// R(theta) Q R(-theta), i.e. the form rotated anticlockwise by theta.
inline QuadForm2D rotated(const QuadForm2D& q, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double a = q.qxx, b = q.qxy, d = q.qyy;
  return {c * c * a - 2 * c * s * b + s * s * d,
          c * s * (a - d) + (c * c - s * s) * b,
          s * s * a + 2 * c * s * b + c * c * d};
}

// Eigenvalues (ascending) and the angle of the eigenvector belonging to the
// smaller one, reduced to [0, pi).
struct QuadFormEigen {
  double lo = 0, hi = 0;
  double weak_axis_angle = 0;
};

inline QuadFormEigen eigen_decompose(const QuadForm2D& q) {
  constexpr double pi = std::numbers::pi_v<double>;
  const double mean = 0.5 * (q.qxx + q.qyy);
  const double diff = 0.5 * (q.qxx - q.qyy);
  const double rad = std::hypot(diff, q.qxy);
  QuadFormEigen e;
  e.lo = mean - rad;
  e.hi = mean + rad;
  // 0.5*atan2(2b, a-d) is the stiff-axis angle; weak axis is orthogonal.
  double ang = 0.5 * std::atan2(2.0 * q.qxy, q.qxx - q.qyy) + 0.5 * pi;
  ang = std::fmod(ang, pi);
  if (ang < 0) ang += pi;
  e.weak_axis_angle = ang;
  return e;
}

// Transverse quadrupole, dk * diag(1, -1). Traceless.
inline QuadForm2D q_trans(double delta_kappa) { return {delta_kappa, 0.0, -delta_kappa}; }

// Diagonal quadrupole, dk * [[0,1],[1,0]]; equals q_trans rotated by pi/4.
inline QuadForm2D q_diag(double delta_kappa) { return {0.0, delta_kappa, 0.0}; }

struct Amplitudes {
  double a_trans = 0;
  double a_diag = 0;
};

// Waveform amplitudes at rotation angle theta.
inline Amplitudes turn_amplitudes(double theta) {
  return {0.5 * (1.0 - std::cos(2.0 * theta)), 0.5 * std::sin(2.0 * theta)};
}

// Additional form that turns diag(kx, ky) into its theta-rotated copy,
// assembled from the two quadrupoles and the amplitudes above.
inline QuadForm2D delta_q(double theta, double kappa_x, double kappa_y) {
  const double dk = kappa_y - kappa_x;
  const Amplitudes a = turn_amplitudes(theta);
  return a.a_trans * q_trans(dk) - a.a_diag * q_diag(dk);
}

}  // namespace ionrot
