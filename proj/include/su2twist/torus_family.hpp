#pragma once

#include "su2twist/quaternion.hpp"
#include "su2twist/sphere_four.hpp"
#include "su2twist/surface.hpp"
#include "su2twist/tolerance.hpp"
#include "su2twist/torus_one.hpp"
#include "su2twist/twist_word.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace su2twist {

/// Two-holed torus: handle X, Y and boundary loops A, B with XYX^-1Y^-1 = AB.
/// k = tr K (K = XYX^-1Y^-1), w = tr AX, wp = tr XB.
struct T2Point {
  double a = 2.0;
  double b = 2.0;
  double x = 2.0;
  double y = 2.0;
  double k = 2.0;
  double w = 2.0;
  double wp = 2.0;
};

double t2_residual(const T2Point& p);

/// The three twists act on (k, w, wp) like the twists of E_(a,b,x,x) on (x, y, z).
T2Point tau_k(const T2Point& p);
T2Point tau_w(const T2Point& p);
T2Point tau_wp(const T2Point& p);
T2Point tau_k_inv(const T2Point& p);
T2Point tau_w_inv(const T2Point& p);
T2Point tau_wp_inv(const T2Point& p);
/// Words over "K", "W", "Wp".
T2Point apply_word(const T2Point& p, const TwistWord& w);

struct FixedPointSystem {
  double r_k = 0.0;   // 2k - (ab + x^2 - w wp)
  double r_wp = 0.0;  // 2wp - (x(a+b) - w k)
  double r_w = 0.0;   // 2w - (x(a+b) - wp k)
  bool holds = false;
  /// When holds and k != +-2: w = wp = x(a+b)/(k+2), checked.
  bool consequences_ok = true;
};

FixedPointSystem fixed_point_system(const T2Point& p, const Tolerances& tol = default_tolerances);
bool fixed_point_system_w(const T2Point& p, const Tolerances& tol = default_tolerances);

struct Predicate {
  double residual = 0.0;
  bool flag = false;
};

struct ExceptionalReport {
  Predicate eq0, e1, e2;
  bool fixedpoint_system = false;
  Predicate c1, c1_5, c2, c3, c4, c5, c6, c6_5;
};

class DivisionGuard : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Throws DivisionGuard when (k+2)^2 = (a+b)^2 or k = -2.
ExceptionalReport exceptional_report_t2(const T2Point& p, const Tolerances& tol = default_tolerances);

/// Coordinates of the three-holed torus predicates; z and zpp are the traces fixed by tau_Z, tau_Z''.
struct T3Coords {
  double b = 0.0;
  double x = 0.0;
  double w = 0.0;
  double c = 0.0;
  double d = 0.0;
};

/// Throws DivisionGuard when b = +-2 (the c4/c5 denominator).
ExceptionalReport exceptional_report_t3(const T3Coords& q, const Tolerances& tol = default_tolerances);

/// Images with the relation [X, Y] B A = 1 of the (g, n) = (1, 2) presentation:
/// generators A1 = X, A2 = Y, A3 = B, A4 = A.
struct TwoHoledTorusRep {
  UnitQuaternion X, Y, B, A;

  static TwoHoledTorusRep random(Rng& rng);
  static TwoHoledTorusRep from_surface(const SurfaceRep& rep);
  SurfaceRep to_surface() const;

  T2Point point() const;
  HandlePair handle() const { return {X, Y}; }
  double z() const { return (X * Y).trace(); }
  double relation_residual() const;
  /// The cut along X: (B, A, X, YX^-1Y^-1) with kappa = (b, a, x, x) and coordinates (k, w, wp).
  FourHoledSphereRep sphere_frame() const;

  /// Generators "X", "Y" (handle), "K", "W", "Wp".
  TwoHoledTorusRep twist(const std::string& gen, long power) const;
  TwoHoledTorusRep apply_word(const TwistWord& w) const;
};

class NonGenericInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SteerT2Result {
  bool success = false;
  TwistWord word;
  T2Point final_point;  // read from the matrices after applying the word
  std::size_t twists_used = 0;
  double delta = 0.0;
  std::string delta_source;  // "inband" or "covering"
  double coordinate_drift = 0.0;  // max gap between predicted coordinates and matrix traces
  std::string reason;
};

/// Steers (x, k) to within eps of (x0, k0). Throws NonGenericInput if the image is not dense
/// or a boundary trace equals +-2.
SteerT2Result steer_t2(const TwoHoledTorusRep& rep, double x0, double k0, double eps, std::size_t budget);

}  // namespace su2twist
