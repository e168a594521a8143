#pragma once

#include "su2twist/quaternion.hpp"
#include "su2twist/tolerance.hpp"
#include "su2twist/twist_word.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace su2twist {

/// Character of the one-holed torus: x = tr X, y = tr Y, z = tr XY.
struct T1Point {
  double x = 2.0;
  double y = 2.0;
  double z = 2.0;
  bool operator==(const T1Point&) const = default;
};

double k_of(const T1Point& p);

T1Point tau_x(const T1Point& p);
T1Point tau_y(const T1Point& p);
T1Point tau_x_inv(const T1Point& p);
T1Point tau_y_inv(const T1Point& p);

/// Applies a word over the generators "X" and "Y".
T1Point apply_word(const T1Point& p, const TwistWord& w);

/// Generators of the handle; the boundary is K = XYX^-1Y^-1.
struct HandlePair {
  UnitQuaternion X;
  UnitQuaternion Y;
};

T1Point traces_of(const HandlePair& h);
/// tau_X: (X, Y) -> (X, YX); tau_Y: (X, Y) -> (XY, Y).
HandlePair twist_x(const HandlePair& h, long power = 1);
HandlePair twist_y(const HandlePair& h, long power = 1);
HandlePair apply_word(const HandlePair& h, const TwistWord& w);

/// The fibre of x inside E_k:
///   (2-x)/4 (y+z)^2 + (2+x)/4 (y-z)^2 = 2 + k - x^2.
/// In circle coordinates U = sqrt((2-x)/4)(y+z), V = sqrt((2+x)/4)(y-z) it is U^2 + V^2 = rhs,
/// and tau_X is the rotation by arccos(x/2).
struct LevelEllipse {
  char fixed = 'x';
  double value = 0.0;
  double coeff_sum = 0.0;   // coefficient of (y+z)^2
  double coeff_diff = 0.0;  // coefficient of (y-z)^2
  double rhs = 0.0;
  std::array<double, 2> center{0.0, 0.0};
  double rotation_angle = 0.0;
  bool degenerate = false;

  std::array<double, 2> to_circle(double y, double z) const;
  std::array<double, 2> from_circle(double u, double v) const;
};

LevelEllipse level_ellipse_x(double k, double x);

/// Largest |y| on the fibre of x in E_k (0 when the fibre is empty or a point).
double y_range_on_x_fibre(double k, double x);

/// The six Pin(2) characters on E_k, one nonzero coordinate +-sqrt(k+2).
std::vector<T1Point> pin2_locus_points(double k);

struct SteerOptions {
  /// Single twists applied per orbit scan; 0 picks max(64, 64/eps).
  std::size_t scan_length = 0;
  /// Only x has to reach its target; y0 is ignored.
  bool x_only = false;
  /// Extra condition the final point must satisfy.
  std::function<bool(const T1Point&)> accept;
};

struct SteerResult {
  bool success = false;
  TwistWord word;
  T1Point final_point;
  std::size_t twists_used = 0;
  std::string reason;
};

/// Greedy alternating search: tau_Y moves x, tau_X moves y, until |x - x0| < eps and |y - y0| < eps.
SteerResult steer_t1(const T1Point& p, double x0, double y0, double eps, std::size_t budget,
                     const SteerOptions& opts = {});

}  // namespace su2twist
