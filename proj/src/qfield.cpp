#include "su2twist/qfield.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace su2twist {

namespace {

const double kSqrt[4] = {1.0, std::sqrt(2.0), std::sqrt(5.0), std::sqrt(10.0)};
const char* kBasisName[4] = {"", "sqrt2", "sqrt5", "sqrt10"};

}  // namespace

QFElement::QFElement(mpq_class q0, mpq_class q1, mpq_class q2, mpq_class q3)
    : c_{std::move(q0), std::move(q1), std::move(q2), std::move(q3)} {
  for (auto& v : c_) {
    v.canonicalize();
  }
}

QFElement QFElement::rational(long num, long den) { return QFElement(mpq_class(num, den), 0, 0, 0); }
QFElement QFElement::sqrt2() { return QFElement(0, 1, 0, 0); }
QFElement QFElement::sqrt5() { return QFElement(0, 0, 1, 0); }
QFElement QFElement::sqrt10() { return QFElement(0, 0, 0, 1); }
QFElement QFElement::golden_r() { return QFElement(mpq_class(1, 4), 0, mpq_class(1, 4), 0); }
QFElement QFElement::golden_s() { return QFElement(mpq_class(-1, 4), 0, mpq_class(1, 4), 0); }

QFElement QFElement::operator+(const QFElement& o) const {
  return QFElement(c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2], c_[3] + o.c_[3]);
}

QFElement QFElement::operator-(const QFElement& o) const {
  return QFElement(c_[0] - o.c_[0], c_[1] - o.c_[1], c_[2] - o.c_[2], c_[3] - o.c_[3]);
}

QFElement QFElement::operator-() const { return QFElement(-c_[0], -c_[1], -c_[2], -c_[3]); }

// Basis products: sqrt2*sqrt5 = sqrt10, sqrt2*sqrt10 = 2 sqrt5, sqrt5*sqrt10 = 5 sqrt2.
QFElement QFElement::operator*(const QFElement& o) const {
  const auto& a = c_;
  const auto& b = o.c_;
  mpq_class r0 = a[0] * b[0] + 2 * a[1] * b[1] + 5 * a[2] * b[2] + 10 * a[3] * b[3];
  mpq_class r1 = a[0] * b[1] + a[1] * b[0] + 5 * (a[2] * b[3] + a[3] * b[2]);
  mpq_class r2 = a[0] * b[2] + a[2] * b[0] + 2 * (a[1] * b[3] + a[3] * b[1]);
  mpq_class r3 = a[0] * b[3] + a[3] * b[0] + a[1] * b[2] + a[2] * b[1];
  return QFElement(std::move(r0), std::move(r1), std::move(r2), std::move(r3));
}

QFElement QFElement::conj2() const { return QFElement(c_[0], -c_[1], c_[2], -c_[3]); }
QFElement QFElement::conj5() const { return QFElement(c_[0], c_[1], -c_[2], -c_[3]); }

QFElement QFElement::inverse() const {
  if (is_zero()) {
    throw std::domain_error("QFElement: division by zero");
  }
  // Product of the other three Galois conjugates; v * rest is the (rational) norm.
  const QFElement rest = conj2() * conj5() * conj2().conj5();
  const QFElement n = *this * rest;
  return rest * QFElement(1 / n.c_[0], 0, 0, 0);
}

QFElement QFElement::operator/(const QFElement& o) const { return *this * o.inverse(); }

bool QFElement::is_zero() const { return sgn(c_[0]) == 0 && is_rational(); }

bool QFElement::is_rational() const { return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0; }

double QFElement::to_double() const {
  double v = 0.0;
  for (int i = 0; i < 4; ++i) {
    v += c_[static_cast<std::size_t>(i)].get_d() * kSqrt[i];
  }
  return v;
}

std::string QFElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    const mpq_class& q = c_[static_cast<std::size_t>(i)];
    if (sgn(q) == 0) {
      continue;
    }
    if (!first) {
      os << (sgn(q) > 0 ? " + " : " - ");
    } else if (sgn(q) < 0) {
      os << '-';
    }
    const mpq_class mag = abs(q);
    if (i == 0) {
      os << mag.get_str();
    } else if (mag == 1) {
      os << kBasisName[i];
    } else {
      os << mag.get_str() << '*' << kBasisName[i];
    }
    first = false;
  }
  return first ? std::string("0") : os.str();
}

bool QFElement::operator==(const QFElement& o) const {
  return c_[0] == o.c_[0] && c_[1] == o.c_[1] && c_[2] == o.c_[2] && c_[3] == o.c_[3];
}

std::strong_ordering QFElement::operator<=>(const QFElement& o) const {
  for (std::size_t i = 0; i < 4; ++i) {
    const int c = cmp(c_[i], o.c_[i]);
    if (c != 0) {
      return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const QFElement& v) { return os << v.to_string(); }

}  // namespace su2twist
