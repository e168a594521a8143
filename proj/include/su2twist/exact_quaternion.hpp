#pragma once

#include "su2twist/qfield.hpp"
#include "su2twist/quaternion.hpp"

#include <array>
#include <compare>
#include <iosfwd>

namespace su2twist {

/// Unit quaternion with entries in Q(sqrt2, sqrt5). Same layout as UnitQuaternion.
struct ExactQuaternion {
  QFElement w{1};
  QFElement x{};
  QFElement y{};
  QFElement z{};

  static ExactQuaternion identity() { return {QFElement(1), QFElement(0), QFElement(0), QFElement(0)}; }

  ExactQuaternion operator*(const ExactQuaternion& o) const;
  ExactQuaternion operator-() const { return {-w, -x, -y, -z}; }
  ExactQuaternion conjugate() const { return {w, -x, -y, -z}; }
  ExactQuaternion inverse() const { return conjugate(); }

  QFElement norm_sq() const { return w * w + x * x + y * y + z * z; }
  bool is_unit() const { return norm_sq() == QFElement(1); }
  QFElement trace() const { return w + w; }

  UnitQuaternion to_float() const { return {w.to_double(), x.to_double(), y.to_double(), z.to_double()}; }

  bool operator==(const ExactQuaternion& o) const = default;
  std::strong_ordering operator<=>(const ExactQuaternion& o) const;
};

std::ostream& operator<<(std::ostream& os, const ExactQuaternion& q);

}  // namespace su2twist
