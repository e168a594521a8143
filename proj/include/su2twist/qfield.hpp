#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <iosfwd>
#include <string>

namespace su2twist {

/// Exact element q0 + q1 sqrt2 + q2 sqrt5 + q3 sqrt10 of Q(sqrt2, sqrt5).
class QFElement {
 public:
  QFElement() = default;
  QFElement(long v) : c_{mpq_class(v), 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
  QFElement(const mpq_class& v) : c_{v, 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
  QFElement(mpq_class q0, mpq_class q1, mpq_class q2, mpq_class q3);

  static QFElement rational(long num, long den);
  static QFElement sqrt2();
  static QFElement sqrt5();
  static QFElement sqrt10();
  /// (sqrt5 + 1) / 4
  static QFElement golden_r();
  /// (sqrt5 - 1) / 4
  static QFElement golden_s();

  const mpq_class& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }

  QFElement operator+(const QFElement& o) const;
  QFElement operator-(const QFElement& o) const;
  QFElement operator-() const;
  QFElement operator*(const QFElement& o) const;
  QFElement operator/(const QFElement& o) const;
  QFElement& operator+=(const QFElement& o) { return *this = *this + o; }
  QFElement& operator-=(const QFElement& o) { return *this = *this - o; }
  QFElement& operator*=(const QFElement& o) { return *this = *this * o; }

  /// Multiplicative inverse; throws std::domain_error on zero.
  QFElement inverse() const;

  /// Galois conjugates sqrt2 -> -sqrt2 and sqrt5 -> -sqrt5.
  QFElement conj2() const;
  QFElement conj5() const;

  bool is_zero() const;
  bool is_rational() const;
  double to_double() const;
  std::string to_string() const;

  bool operator==(const QFElement& o) const;
  /// Lexicographic on coefficients. Used for ordered containers, not the real order.
  std::strong_ordering operator<=>(const QFElement& o) const;

 private:
  std::array<mpq_class, 4> c_{};
};

std::ostream& operator<<(std::ostream& os, const QFElement& v);

}  // namespace su2twist
