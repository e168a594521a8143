#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <random>

namespace su2twist {

using Rng = std::mt19937_64;
using Vec3 = std::array<double, 3>;

/// An element of SU(2) written as w + xi + yj + zk.
///
/// The identification with 2x2 matrices is
///   [[w + x i,  y + z i],
///    [-y + z i, w - x i]]
/// so quaternion multiplication is matrix multiplication and the trace is 2w.
struct UnitQuaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static constexpr UnitQuaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr UnitQuaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr UnitQuaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr UnitQuaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr UnitQuaternion operator*(const UnitQuaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }
  UnitQuaternion& operator*=(const UnitQuaternion& o) { return *this = *this * o; }
  constexpr UnitQuaternion operator-() const { return {-w, -x, -y, -z}; }

  constexpr UnitQuaternion conjugate() const { return {w, -x, -y, -z}; }
  // Inverse equals conjugate on the group.
  constexpr UnitQuaternion inverse() const { return conjugate(); }

  constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm_sq()); }
  UnitQuaternion normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
  }
  constexpr double trace() const { return 2.0 * w; }

  constexpr std::array<double, 4> components() const { return {w, x, y, z}; }
  constexpr Vec3 vector_part() const { return {x, y, z}; }

  constexpr bool operator==(const UnitQuaternion&) const = default;
};

std::ostream& operator<<(std::ostream& os, const UnitQuaternion& q);

inline constexpr UnitQuaternion quat_mul(const UnitQuaternion& a, const UnitQuaternion& b) { return a * b; }
inline constexpr double trace(const UnitQuaternion& q) { return q.trace(); }

/// Max-abs distance between coefficient vectors.
double distance(const UnitQuaternion& a, const UnitQuaternion& b);

/// g a g^-1
inline constexpr UnitQuaternion conjugate_by(const UnitQuaternion& g, const UnitQuaternion& a) {
  return g * a * g.inverse();
}

/// a b a^-1 b^-1
inline constexpr UnitQuaternion commutator(const UnitQuaternion& a, const UnitQuaternion& b) {
  return a * b * a.inverse() * b.inverse();
}

/// tr(ab^-1) + tr(ab) - tr(a)tr(b); vanishes identically on SU(2).
double trace_product_identity_check(const UnitQuaternion& a, const UnitQuaternion& b);

/// Haar-uniform sample on the 3-sphere.
UnitQuaternion random_su2(Rng& rng);
UnitQuaternion random_su2(std::uint64_t seed);

/// Unit quaternion with the given trace and rotation axis (axis need not be normalized).
UnitQuaternion from_trace_and_axis(double tr, const Vec3& axis);

/// Unit rotation axis of the SO(3) image; zero vector when q = +-1.
Vec3 rotation_axis(const UnitQuaternion& q);

/// Rotation angle of the SO(3) image, in [0, pi] (q and -q give the same rotation).
double rotation_angle(const UnitQuaternion& q);

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);

}  // namespace su2twist
