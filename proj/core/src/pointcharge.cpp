#include "ionrot/pointcharge.hpp"

#include <cmath>
#include <stdexcept>

#include "ionrot/errors.hpp"

namespace ionrot {

ElectrodeLayout ElectrodeLayout::transverse(double a, double b, double corner, double middle) {
  if (!(a > 0 && b > 0)) throw std::invalid_argument("ElectrodeLayout: spacings must be > 0");
  return {a, b, corner, middle, LayoutKind::Transverse};
}

ElectrodeLayout ElectrodeLayout::diagonal(double a, double b, double corner) {
  if (!(a > 0 && b > 0)) throw std::invalid_argument("ElectrodeLayout: spacings must be > 0");
  return {a, b, corner, 0.0, LayoutKind::Diagonal};
}

std::vector<PointCharge> ElectrodeLayout::charges() const {
  std::vector<PointCharge> out;
  const double hx = 0.5 * spacing_a, hy = 0.5 * spacing_b;
  for (double sx : {-1.0, 1.0}) {
    for (double sy : {-1.0, 1.0}) {
      const double w =
          configuration == LayoutKind::Diagonal ? corner_weight * sx * sy : corner_weight;
      out.push_back({Vec3(sx * hx, sy * hy, 0.0), w});
    }
  }
  if (configuration == LayoutKind::Transverse) {
    out.push_back({Vec3(0.0, hy, 0.0), middle_weight});
    out.push_back({Vec3(0.0, -hy, 0.0), middle_weight});
  }
  return out;
}

namespace {
constexpr double kSingularDistance = 1e-12;

void check_distance(double r) {
  if (r < kSingularDistance)
    throw NumericalError("pointcharge: evaluation point coincides with a charge");
}
}  // namespace

double potential_at(const std::vector<PointCharge>& charges, const Vec3& point, double k) {
  double phi = 0;
  for (const auto& c : charges) {
    const double r = (point - c.position).norm();
    check_distance(r);
    phi += k * c.weight / r;
  }
  return phi;
}

Vec3 field_at(const std::vector<PointCharge>& charges, const Vec3& point, double k) {
  Vec3 e = Vec3::Zero();
  for (const auto& c : charges) {
    const Vec3 d = point - c.position;
    const double r = d.norm();
    check_distance(r);
    e += k * c.weight * d / (r * r * r);  // E = -grad(phi)
  }
  return e;
}

Mat3 hessian_at(const std::vector<PointCharge>& charges, const Vec3& point, double k) {
  Mat3 h = Mat3::Zero();
  for (const auto& c : charges) {
    const Vec3 d = point - c.position;
    const double r = d.norm();
    check_distance(r);
    const double r2 = r * r;
    const double inv_r5 = 1.0 / (r2 * r2 * r);
    h += k * c.weight * (3.0 * d * d.transpose() - r2 * Mat3::Identity()) * inv_r5;
  }
  return h;
}

double potential_at(const ElectrodeLayout& layout, const Vec3& p, double k) {
  return potential_at(layout.charges(), p, k);
}
Vec3 field_at(const ElectrodeLayout& layout, const Vec3& p, double k) {
  return field_at(layout.charges(), p, k);
}
Mat3 hessian_at(const ElectrodeLayout& layout, const Vec3& p, double k) {
  return hessian_at(layout.charges(), p, k);
}

double z_curvature_single(double charge, double x, double y, double k) {
  const double s2 = x * x + y * y;
  if (s2 < kSingularDistance * kSingularDistance)
    throw NumericalError("z_curvature_single: singular at the origin");
  return -charge * k / (s2 * std::sqrt(s2));
}

double charge_ratio(double aspect) {
  if (!(aspect > 0)) throw std::invalid_argument("charge_ratio: aspect must be > 0");
  return -2.0 * std::pow(1.0 + aspect * aspect, -1.5);
}

ElectrodeLayout transverse_layout_for_vmax(double aspect, double v_max) {
  if (!(aspect > 0 && v_max > 0))
    throw std::invalid_argument("transverse_layout_for_vmax: aspect and v_max must be > 0");
  const double ratio = charge_ratio(aspect);
  double corner, middle;
  if (std::abs(ratio) <= 1.0) {  // corners carry the higher voltage
    corner = v_max;
    middle = ratio * v_max;
  } else {
    middle = -v_max;
    corner = v_max / std::abs(ratio);
  }
  return ElectrodeLayout::transverse(aspect, 1.0, corner, middle);
}

ElectrodeLayout diagonal_layout_for_vmax(double aspect, double v_max) {
  if (!(aspect > 0 && v_max > 0))
    throw std::invalid_argument("diagonal_layout_for_vmax: aspect and v_max must be > 0");
  return ElectrodeLayout::diagonal(aspect, 1.0, v_max);
}

double transverse_strength(double aspect, double v_max) {
  const Mat3 h = hessian_at(transverse_layout_for_vmax(aspect, v_max), Vec3::Zero());
  return 0.5 * std::abs(h(0, 0) - h(1, 1));
}

double diagonal_strength(double aspect, double v_max) {
  const Mat3 h = hessian_at(diagonal_layout_for_vmax(aspect, v_max), Vec3::Zero());
  return std::abs(h(0, 1));
}

double optimal_transverse_aspect() {
  // Golden-section maximisation of transverse_strength on [0.2, 5].
  constexpr double inv_phi = 0.6180339887498949;
  double a = 0.2, b = 5.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = transverse_strength(x1, 1.0);
  double f2 = transverse_strength(x2, 1.0);
  while (b - a > 1e-4) {
    if (f1 > f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = transverse_strength(x1, 1.0);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = transverse_strength(x2, 1.0);
    }
  }
  return 0.5 * (a + b);
}

QuadForm2D quadform_from_layout(const ElectrodeLayout& layout, double ion_charge, double k) {
  const Mat3 h = hessian_at(layout, Vec3::Zero(), k);
  const double dominant =
      std::max({std::abs(h(0, 0)), std::abs(h(1, 1)), std::abs(h(0, 1))});
  if (std::abs(h(2, 2)) > 1e-8 * dominant)
    throw std::invalid_argument(
        "quadform_from_layout: layout has residual z-curvature, not a 2D quadrupole");
  return {ion_charge * h(0, 0), ion_charge * h(0, 1), ion_charge * h(1, 1)};
}

}  // namespace ionrot
