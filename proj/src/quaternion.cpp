#include "su2twist/quaternion.hpp"

#include <algorithm>
#include <numbers>
#include <ostream>

namespace su2twist {

std::ostream& operator<<(std::ostream& os, const UnitQuaternion& q) {
  return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
}

double distance(const UnitQuaternion& a, const UnitQuaternion& b) {
  return std::max({std::abs(a.w - b.w), std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

double trace_product_identity_check(const UnitQuaternion& a, const UnitQuaternion& b) {
  return (a * b.inverse()).trace() + (a * b).trace() - a.trace() * b.trace();
}

UnitQuaternion random_su2(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    UnitQuaternion q{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
    const double n = q.norm();
    if (n > 1e-6) {
      return {q.w / n, q.x / n, q.y / n, q.z / n};
    }
  }
}

UnitQuaternion random_su2(std::uint64_t seed) {
  Rng rng(seed);
  return random_su2(rng);
}

UnitQuaternion from_trace_and_axis(double tr, const Vec3& axis) {
  const double w = std::clamp(tr / 2.0, -1.0, 1.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - w * w));
  const double n = norm(axis);
  return {w, s * axis[0] / n, s * axis[1] / n, s * axis[2] / n};
}

Vec3 rotation_axis(const UnitQuaternion& q) {
  const Vec3 v = q.vector_part();
  const double n = norm(v);
  if (n < 1e-300) {
    return {0.0, 0.0, 0.0};
  }
  return {v[0] / n, v[1] / n, v[2] / n};
}

double rotation_angle(const UnitQuaternion& q) {
  const double angle = 2.0 * std::acos(std::clamp(std::abs(q.w), 0.0, 1.0));
  return std::min(angle, 2.0 * std::numbers::pi - angle);
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

}  // namespace su2twist
