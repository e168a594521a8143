#include "su2twist/exact_quaternion.hpp"

#include <ostream>

namespace su2twist {

ExactQuaternion ExactQuaternion::operator*(const ExactQuaternion& o) const {
  return {w * o.w - x * o.x - y * o.y - z * o.z,
          w * o.x + x * o.w + y * o.z - z * o.y,
          w * o.y - x * o.z + y * o.w + z * o.x,
          w * o.z + x * o.y - y * o.x + z * o.w};
}

std::strong_ordering ExactQuaternion::operator<=>(const ExactQuaternion& o) const {
  if (auto c = w <=> o.w; c != 0) {
    return c;
  }
  if (auto c = x <=> o.x; c != 0) {
    return c;
  }
  if (auto c = y <=> o.y; c != 0) {
    return c;
  }
  return z <=> o.z;
}

std::ostream& operator<<(std::ostream& os, const ExactQuaternion& q) {
  return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
}

}  // namespace su2twist
