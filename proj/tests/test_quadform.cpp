// Rotation-waveform algebra.
//
// Independent oracle used throughout: the additional form needed to rotate
// diag(kx, ky) by theta is R(theta) diag(kx, ky) R(-theta) - diag(kx, ky),
// evaluated here entrywise via `rotated`. The amplitude construction must
// agree with it to near machine precision and must keep the in-plane
// eigenvalues exactly {kx, ky}.
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ionrot/quadform.hpp"

using namespace ionrot;

namespace {
constexpr double kPi = std::numbers::pi_v<double>;

QuadForm2D direct_route(double theta, double kx, double ky) {
  const QuadForm2D base{kx, 0.0, ky};
  return rotated(base, theta) - base;
}

double max_entry_diff(const QuadForm2D& a, const QuadForm2D& b) {
  return std::max({std::abs(a.qxx - b.qxx), std::abs(a.qxy - b.qxy), std::abs(a.qyy - b.qyy)});
}
}  // namespace

TEST_CASE("rotation matrix basics") {
  const Mat2 id = rotation_matrix(0.0);
  CHECK(id.m00 == doctest::Approx(1.0));
  CHECK(id.m01 == doctest::Approx(0.0));
  const Mat2 quarter = rotation_matrix(kPi / 2);
  CHECK(quarter.m00 == doctest::Approx(0.0));
  CHECK(quarter.m01 == doctest::Approx(-1.0));
  CHECK(quarter.m10 == doctest::Approx(1.0));
  const Mat2 eighth = rotation_matrix(kPi / 4);
  CHECK(eighth.m00 == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(eighth.m01 == doctest::Approx(-1.0 / std::sqrt(2.0)));
  // orthogonality, det = 1
  CHECK(eighth.m00 * eighth.m00 + eighth.m10 * eighth.m10 == doctest::Approx(1.0));
  CHECK(eighth.m00 * eighth.m11 - eighth.m01 * eighth.m10 == doctest::Approx(1.0));
}

TEST_CASE("transverse quadrupole form") {
  CHECK(max_entry_diff(q_trans(0.0), QuadForm2D{}) == 0.0);
  const QuadForm2D q = q_trans(2.0);
  CHECK(q.qxx == 2.0);
  CHECK(q.qyy == -2.0);
  CHECK(q.qxy == 0.0);
  for (double dk : {-3.0, 0.5, 7.25}) CHECK(q_trans(dk).trace() == 0.0);
}

TEST_CASE("diagonal quadrupole equals pi/4-rotated transverse") {
  CHECK(max_entry_diff(q_diag(0.0), QuadForm2D{}) == 0.0);
  const QuadForm2D q = q_diag(1.0);
  CHECK(q.qxy == 1.0);
  CHECK(q.qxx == 0.0);
  CHECK(q.qyy == 0.0);
  const QuadForm2D expect = rotated(q_trans(3.0), kPi / 4);
  CHECK(max_entry_diff(q_diag(3.0), expect) < 1e-14);
}

TEST_CASE("turn amplitudes") {
  const Amplitudes a0 = turn_amplitudes(0.0);
  CHECK(a0.a_trans == 0.0);
  CHECK(a0.a_diag == 0.0);
  const Amplitudes a90 = turn_amplitudes(kPi / 2);
  CHECK(a90.a_trans == doctest::Approx(1.0));
  CHECK(a90.a_diag == doctest::Approx(0.0));
  const Amplitudes a45 = turn_amplitudes(kPi / 4);
  CHECK(a45.a_trans == doctest::Approx(0.5));
  CHECK(a45.a_diag == doctest::Approx(0.5));
}

TEST_CASE("delta_q examples") {
  CHECK(max_entry_diff(delta_q(0.0, 1.0, 3.0), QuadForm2D{}) < 1e-15);

  // Half rotation swaps the two curvatures.
  const QuadForm2D half = delta_q(kPi / 2, 1.0, 3.0);
  CHECK(half.qxx == doctest::Approx(2.0));
  CHECK(half.qyy == doctest::Approx(-2.0));
  CHECK(std::abs(half.qxy) < 1e-15);

  const QuadForm2D q = delta_q(kPi / 4, 1.0, 3.0);
  CHECK(q.qxx == doctest::Approx(1.0));
  CHECK(q.qxy == doctest::Approx(-1.0));
  CHECK(q.qyy == doctest::Approx(-1.0));
  CHECK(max_entry_diff(q, direct_route(kPi / 4, 1.0, 3.0)) < 1e-14);
}

TEST_CASE("waveform identity and constant eigenvalues on a 64-point grid") {
  const double kx = 3.772e-14, ky = 1.386e-13;  // J/m^2 scale of a real trap
  const double scale = ky - kx;
  for (int i = 0; i <= 64; ++i) {
    const double theta = kPi * i / 64.0;
    const QuadForm2D amp = delta_q(theta, kx, ky);
    const QuadForm2D dir = direct_route(theta, kx, ky);
    CHECK(max_entry_diff(amp, dir) <= 1e-12 * scale);

    const QuadForm2D total = QuadForm2D{kx, 0.0, ky} + amp;
    const QuadFormEigen e = eigen_decompose(total);
    CHECK(std::abs(e.lo - kx) <= 1e-10 * kx);
    CHECK(std::abs(e.hi - ky) <= 1e-10 * ky);
  }
}

TEST_CASE("weak axis tracks theta") {
  const double kx = 1.0, ky = 3.7;
  for (int i = 0; i <= 64; ++i) {
    const double theta = kPi * i / 64.0;
    const QuadForm2D total = QuadForm2D{kx, 0.0, ky} + delta_q(theta, kx, ky);
    const double ang = eigen_decompose(total).weak_axis_angle;
    double want = std::fmod(theta, kPi);
    double diff = std::abs(ang - want);
    diff = std::min(diff, kPi - diff);
    CHECK(diff <= 1e-8);
  }
}
