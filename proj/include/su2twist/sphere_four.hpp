#pragma once

#include "su2twist/quaternion.hpp"
#include "su2twist/tolerance.hpp"
#include "su2twist/twist_word.hpp"

#include <array>
#include <optional>

namespace su2twist {

struct TraceInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return lo > hi; }
  double length() const { return hi - lo; }
  bool contains(double t, double slack = 0.0) const { return t >= lo - slack && t <= hi + slack; }
};

/// I_{a,b}: the traces tr(AB) for tr A = a, tr B = b.
TraceInterval trace_interval(double a, double b);
TraceInterval intersect(const TraceInterval& u, const TraceInterval& v);

/// Boundary traces of the four-holed sphere.
struct Kappa4 {
  double a = 2.0;
  double b = 2.0;
  double c = 2.0;
  double d = 2.0;

  Kappa4() = default;
  /// Throws std::invalid_argument when I_{a,b} and I_{c,d} are disjoint.
  Kappa4(double a, double b, double c, double d);

  double px() const { return a * b + c * d; }
  double py() const { return a * d + b * c; }
  double pz() const { return a * c + b * d; }
  double constant() const { return a * a + b * b + c * c + d * d + a * b * c * d - 4.0; }
  /// The x-values attained on E_kappa.
  TraceInterval x_range() const;
};

/// x = tr AB, y = tr BC, z = tr CA.
struct T4Point {
  Kappa4 kappa;
  double x = 2.0;
  double y = 2.0;
  double z = 2.0;
};

double e_kappa_residual(const T4Point& p);

T4Point tau_x4(const T4Point& p);
T4Point tau_y4(const T4Point& p);
T4Point tau_z4(const T4Point& p);
T4Point tau_x4_inv(const T4Point& p);
T4Point tau_y4_inv(const T4Point& p);
T4Point tau_z4_inv(const T4Point& p);
/// Words over "X", "Y", "Z".
T4Point apply_word(const T4Point& p, const TwistWord& w);

/// The fibre X_kappa(x) written as
///   (2+x)/4 (y+z-u0)^2 + (2-x)/4 (y-z-v0)^2 = rhs,
/// with u0 = (a+b)(c+d)/(2+x), v0 = (a-b)(d-c)/(2-x). Circle coordinates
/// U = sqrt((2+x)/4)(y+z-u0), V = sqrt((2-x)/4)(y-z-v0) turn tau_X into a rotation by 2 arccos(x/2).
struct SphereEllipse {
  double x = 0.0;
  double coeff_sum = 0.0;
  double coeff_diff = 0.0;
  double offset_sum = 0.0;
  double offset_diff = 0.0;
  double rhs = 0.0;
  std::array<double, 2> center{0.0, 0.0};  // (y_c, z_c)
  double rotation_angle = 0.0;
  bool degenerate = false;

  std::array<double, 2> to_circle(double y, double z) const;
  std::array<double, 2> from_circle(double u, double v) const;
};

/// Throws std::domain_error for x = +-2.
SphereEllipse x_level_ellipse(const Kappa4& kappa, double x);

/// The product form of the fibre radius, ((x^2-abx+a^2+b^2-4)(x^2-cdx+c^2+d^2-4))/(4-x^2).
double sphere_rhs_product_form(const Kappa4& kappa, double x);

/// Range of the coordinate v on the fibre where the coordinate u is fixed, t being the third one.
/// pu, pv, pt are the linear coefficients (px, py, pz) attached to u, v, t.
std::optional<TraceInterval> fibre_range(double u, double pu, double pv, double pt, double constant);

/// Ranges of y and z on X_kappa(x), of x on Y_kappa(y).
std::optional<TraceInterval> y_range_on_x_fibre(const Kappa4& kappa, double x);
std::optional<TraceInterval> z_range_on_x_fibre(const Kappa4& kappa, double x);
std::optional<TraceInterval> x_range_on_y_fibre(const Kappa4& kappa, double y);

/// t = 2cos(pi k/m) for some 1 <= k < m <= n, within 1e-12.
bool filtration_member(double t, int n);

inline constexpr double kEllipseLengthBound = 16.0;
/// ceil(2 L/eps) + 1 with L the circumference bound 16.
int n_of_eps(double eps);

/// Largest delta on a fixed geometric ladder (ratio 2^(-1/4), from 1 down to 1e-6) passing the
/// sampled in-band predicate for (a, b, c, d) with |c|, |d| <= delta. Throws std::runtime_error
/// below 1e-6.
double delta_inband(double a, double b, double eps);
/// Same ladder, checking only that every Y-fibre with |y| <= delta reaches x-values eps-dense in the x-range.
double delta_covering(double a, double b, double eps);

/// Sampled predicates behind the two searches.
bool inband_predicate(double a, double b, double eps, double delta);
bool covering_predicate(double a, double b, double eps, double delta);

/// Images of the four boundary loops with A B C D = 1.
struct FourHoledSphereRep {
  UnitQuaternion A, B, C, D;

  static FourHoledSphereRep random(Rng& rng);
  /// D is solved from the relation.
  static FourHoledSphereRep from_abc(const UnitQuaternion& A, const UnitQuaternion& B, const UnitQuaternion& C);

  Kappa4 kappa() const;
  T4Point point() const;
  double relation_residual() const;

  FourHoledSphereRep twist_x(long power = 1) const;
  FourHoledSphereRep twist_y(long power = 1) const;
  FourHoledSphereRep twist_z(long power = 1) const;
  FourHoledSphereRep apply_word(const TwistWord& w) const;
};

/// Conjugators (g_A, g_B, g_C, g_D) realizing one twist: P -> g_P P g_P^-1 for each boundary loop.
/// gen is 'X', 'Y' or 'Z'.
std::array<UnitQuaternion, 4> twist_conjugators(const FourHoledSphereRep& r, char gen, bool forward);

}  // namespace su2twist
