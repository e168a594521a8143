#include "su2twist/sphere_four.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace su2twist {

TraceInterval trace_interval(double a, double b) {
  // Closed forms when the rounding of the general expression would blur them.
  if (a == b) {
    return {a * a - 2.0, 2.0};
  }
  if (a == -b) {
    return {-2.0, 2.0 - a * a};
  }
  const double s = std::sqrt(std::max(0.0, (a * a - 4.0) * (b * b - 4.0)));
  return {(a * b - s) / 2.0, (a * b + s) / 2.0};
}

TraceInterval intersect(const TraceInterval& u, const TraceInterval& v) {
  return {std::max(u.lo, v.lo), std::min(u.hi, v.hi)};
}

Kappa4::Kappa4(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
  const TraceInterval r = intersect(trace_interval(a, b), trace_interval(c, d));
  if (r.lo > r.hi + 1e-9) {
    throw std::invalid_argument("I_{a,b} and I_{c,d} are disjoint: E_kappa is empty");
  }
}

TraceInterval Kappa4::x_range() const {
  TraceInterval r = intersect(trace_interval(a, b), trace_interval(c, d));
  if (r.lo > r.hi) {
    r.lo = r.hi = (r.lo + r.hi) / 2.0;
  }
  return r;
}

double e_kappa_residual(const T4Point& p) {
  const Kappa4& k = p.kappa;
  const double x = p.x;
  const double y = p.y;
  const double z = p.z;
  return x * x + y * y + z * z + x * y * z - k.px() * x - k.py() * y - k.pz() * z + k.constant();
}

T4Point tau_x4(const T4Point& p) {
  T4Point q = p;
  q.z = p.kappa.pz() - p.x * p.y - p.z;
  q.y = p.kappa.py() - p.x * q.z - p.y;
  return q;
}

T4Point tau_x4_inv(const T4Point& p) {
  T4Point q = p;
  q.y = p.kappa.py() - p.x * p.z - p.y;
  q.z = p.kappa.pz() - p.x * q.y - p.z;
  return q;
}

T4Point tau_y4(const T4Point& p) {
  T4Point q = p;
  q.x = p.kappa.px() - p.y * p.z - p.x;
  q.z = p.kappa.pz() - p.y * q.x - p.z;
  return q;
}

T4Point tau_y4_inv(const T4Point& p) {
  T4Point q = p;
  q.z = p.kappa.pz() - p.y * p.x - p.z;
  q.x = p.kappa.px() - p.y * q.z - p.x;
  return q;
}

T4Point tau_z4(const T4Point& p) {
  T4Point q = p;
  q.y = p.kappa.py() - p.z * p.x - p.y;
  q.x = p.kappa.px() - p.z * q.y - p.x;
  return q;
}

T4Point tau_z4_inv(const T4Point& p) {
  T4Point q = p;
  q.x = p.kappa.px() - p.z * p.y - p.x;
  q.y = p.kappa.py() - p.z * q.x - p.y;
  return q;
}

T4Point apply_word(const T4Point& p, const TwistWord& w) {
  T4Point q = p;
  for (const auto& l : w.letters()) {
    T4Point (*fwd)(const T4Point&) = nullptr;
    T4Point (*bwd)(const T4Point&) = nullptr;
    if (l.name == "X") {
      fwd = tau_x4;
      bwd = tau_x4_inv;
    } else if (l.name == "Y") {
      fwd = tau_y4;
      bwd = tau_y4_inv;
    } else if (l.name == "Z") {
      fwd = tau_z4;
      bwd = tau_z4_inv;
    } else {
      throw std::invalid_argument("four-holed sphere twists are X, Y and Z, got " + l.name);
    }
    const long n = std::labs(l.power);
    for (long i = 0; i < n; ++i) {
      q = l.power > 0 ? fwd(q) : bwd(q);
    }
  }
  return q;
}

std::array<double, 2> SphereEllipse::to_circle(double y, double z) const {
  return {std::sqrt(coeff_sum) * (y + z - offset_sum), std::sqrt(coeff_diff) * (y - z - offset_diff)};
}

std::array<double, 2> SphereEllipse::from_circle(double u, double v) const {
  const double s = u / std::sqrt(coeff_sum) + offset_sum;
  const double d = v / std::sqrt(coeff_diff) + offset_diff;
  return {(s + d) / 2.0, (s - d) / 2.0};
}

SphereEllipse x_level_ellipse(const Kappa4& k, double x) {
  if (std::abs(x) >= 2.0) {
    throw std::domain_error("x_level_ellipse is singular at x = +-2");
  }
  SphereEllipse e;
  e.x = x;
  e.coeff_sum = (2.0 + x) / 4.0;
  e.coeff_diff = (2.0 - x) / 4.0;
  e.offset_sum = (k.a + k.b) * (k.c + k.d) / (2.0 + x);
  e.offset_diff = (k.a - k.b) * (k.d - k.c) / (2.0 - x);
  const double c0 = x * x - k.px() * x + k.constant();
  e.rhs = e.coeff_sum * e.offset_sum * e.offset_sum + e.coeff_diff * e.offset_diff * e.offset_diff - c0;
  const double den = 4.0 - x * x;
  e.center = {(2.0 * k.py() - x * k.pz()) / den, (2.0 * k.pz() - x * k.py()) / den};
  e.rotation_angle = 2.0 * std::acos(x / 2.0);
  e.degenerate = e.rhs <= 0.0;
  return e;
}

double sphere_rhs_product_form(const Kappa4& k, double x) {
  return (x * x - k.a * k.b * x + k.a * k.a + k.b * k.b - 4.0) *
         (x * x - k.c * k.d * x + k.c * k.c + k.d * k.d - 4.0) / (4.0 - x * x);
}

std::optional<TraceInterval> fibre_range(double u, double pu, double pv, double pt, double constant) {
  // t^2 + (uv - pt) t + (v^2 - pv v + u^2 - pu u + constant) = 0 has a real root iff disc(v) >= 0.
  const double c = u * u - pu * u + constant;
  const double qa = u * u - 4.0;
  const double qb = 4.0 * pv - 2.0 * u * pt;
  const double qc = pt * pt - 4.0 * c;
  if (qa >= 0.0) {
    return std::nullopt;
  }
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) {
    return std::nullopt;
  }
  const double s = std::sqrt(disc);
  const double r1 = (-qb + s) / (2.0 * qa);
  const double r2 = (-qb - s) / (2.0 * qa);
  return TraceInterval{std::min(r1, r2), std::max(r1, r2)};
}

std::optional<TraceInterval> y_range_on_x_fibre(const Kappa4& k, double x) {
  return fibre_range(x, k.px(), k.py(), k.pz(), k.constant());
}

std::optional<TraceInterval> z_range_on_x_fibre(const Kappa4& k, double x) {
  return fibre_range(x, k.px(), k.pz(), k.py(), k.constant());
}

std::optional<TraceInterval> x_range_on_y_fibre(const Kappa4& k, double y) {
  return fibre_range(y, k.py(), k.px(), k.pz(), k.constant());
}

bool filtration_member(double t, int n) {
  for (int m = 2; m <= n; ++m) {
    for (int j = 1; j < m; ++j) {
      if (std::abs(t - 2.0 * std::cos(std::numbers::pi * j / m)) <= 1e-12) {
        return true;
      }
    }
  }
  return false;
}

int n_of_eps(double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("n_of_eps needs eps > 0");
  }
  return static_cast<int>(std::ceil(2.0 * kEllipseLengthBound / eps)) + 1;
}

namespace {

constexpr int kPitchDivisions = 8;
constexpr int kXSamples = 129;

// Condition 1: every Y-fibre with |y| <= delta reaches within eps of both ends of the x-range.
bool covers_x_range(const Kappa4& k, double eps, double delta) {
  const TraceInterval full = k.x_range();
  for (int iy = -kPitchDivisions; iy <= kPitchDivisions; ++iy) {
    const double y = delta * iy / kPitchDivisions;
    const auto r = x_range_on_y_fibre(k, y);
    if (!r || r->lo > full.lo + eps || r->hi < full.hi - eps) {
      return false;
    }
  }
  return true;
}

// Condition 2: each X-fibre either reaches all of [-delta/2, delta/2] in y and z or stays within [-delta, delta].
bool fibres_in_band(const Kappa4& k, double delta) {
  const TraceInterval full = k.x_range();
  for (int ix = 0; ix < kXSamples; ++ix) {
    const double x = full.lo + full.length() * ix / (kXSamples - 1);
    if (std::abs(x) >= 2.0) {
      continue;
    }
    const auto ry = y_range_on_x_fibre(k, x);
    const auto rz = z_range_on_x_fibre(k, x);
    if (!ry || !rz) {
      continue;  // empty or point fibre at the end of the range
    }
    const bool reaches = ry->lo <= -delta / 2 && ry->hi >= delta / 2 && rz->lo <= -delta / 2 && rz->hi >= delta / 2;
    const bool inside = ry->lo >= -delta && ry->hi <= delta && rz->lo >= -delta && rz->hi <= delta;
    if (!reaches && !inside) {
      return false;
    }
  }
  return true;
}

template <class Pred>
bool over_cd_grid(double a, double b, double delta, Pred pred) {
  for (int ic = -kPitchDivisions; ic <= kPitchDivisions; ++ic) {
    for (int id = -kPitchDivisions; id <= kPitchDivisions; ++id) {
      const double c = delta * ic / kPitchDivisions;
      const double d = delta * id / kPitchDivisions;
      Kappa4 k;
      k.a = a;
      k.b = b;
      k.c = c;
      k.d = d;
      const TraceInterval r = intersect(trace_interval(a, b), trace_interval(c, d));
      if (r.lo > r.hi) {
        continue;
      }
      if (!pred(k)) {
        return false;
      }
    }
  }
  return true;
}

template <class Pred>
double ladder_search(const char* what, Pred pred) {
  const double ratio = std::pow(2.0, -0.25);
  for (double delta = 1.0; delta >= 1e-6; delta *= ratio) {
    if (pred(delta)) {
      return delta;
    }
  }
  throw std::runtime_error(std::string(what) + ": no delta above 1e-6 passes the sampled predicate");
}

void check_inband_args(double a, double b, double eps) {
  if (!(std::abs(a) < 2.0 && std::abs(b) < 2.0) || !(eps > 0.0)) {
    throw std::invalid_argument("delta search needs a, b in (-2, 2) and eps > 0");
  }
}

}  // namespace

bool covering_predicate(double a, double b, double eps, double delta) {
  return over_cd_grid(a, b, delta, [&](const Kappa4& k) { return covers_x_range(k, eps, delta); });
}

bool inband_predicate(double a, double b, double eps, double delta) {
  return over_cd_grid(a, b, delta,
                      [&](const Kappa4& k) { return covers_x_range(k, eps, delta) && fibres_in_band(k, delta); });
}

double delta_inband(double a, double b, double eps) {
  check_inband_args(a, b, eps);
  return ladder_search("delta_inband", [&](double d) { return inband_predicate(a, b, eps, d); });
}

double delta_covering(double a, double b, double eps) {
  check_inband_args(a, b, eps);
  return ladder_search("delta_covering", [&](double d) { return covering_predicate(a, b, eps, d); });
}

FourHoledSphereRep FourHoledSphereRep::random(Rng& rng) {
  const UnitQuaternion A = random_su2(rng);
  const UnitQuaternion B = random_su2(rng);
  const UnitQuaternion C = random_su2(rng);
  return from_abc(A, B, C);
}

FourHoledSphereRep FourHoledSphereRep::from_abc(const UnitQuaternion& A, const UnitQuaternion& B,
                                                const UnitQuaternion& C) {
  return {A, B, C, (A * B * C).inverse().normalized()};
}

Kappa4 FourHoledSphereRep::kappa() const {
  Kappa4 k;
  k.a = A.trace();
  k.b = B.trace();
  k.c = C.trace();
  k.d = D.trace();
  return k;
}

T4Point FourHoledSphereRep::point() const {
  return {kappa(), (A * B).trace(), (B * C).trace(), (C * A).trace()};
}

double FourHoledSphereRep::relation_residual() const {
  return distance(A * B * C * D, UnitQuaternion::identity());
}

std::array<UnitQuaternion, 4> twist_conjugators(const FourHoledSphereRep& r, char gen, bool forward) {
  const UnitQuaternion one = UnitQuaternion::identity();
  switch (gen) {
    case 'X': {
      const UnitQuaternion g = forward ? r.A * r.B : (r.A * r.B).inverse();
      return {one, one, g, g};
    }
    case 'Y': {
      const UnitQuaternion bc = r.B * r.C;
      const UnitQuaternion g = forward ? bc.inverse() : bc;
      return {one, g, g, one};
    }
    case 'Z': {
      if (forward) {
        const UnitQuaternion ab = r.A * r.B;
        const UnitQuaternion b1 = ab * r.B * ab.inverse();
        const UnitQuaternion bc = b1 * r.C;
        return {ab, bc * ab, bc, one};
      }
      const UnitQuaternion g = (r.B * r.C).inverse();
      const UnitQuaternion b1 = g * r.B * g.inverse();
      const UnitQuaternion h = (r.A * b1).inverse();
      return {h, h * g, g, one};
    }
    default:
      throw std::invalid_argument(std::string("four-holed sphere twists are X, Y and Z, got ") + gen);
  }
}

namespace {

UnitQuaternion conj(const UnitQuaternion& g, const UnitQuaternion& q) { return (g * q * g.inverse()).normalized(); }

FourHoledSphereRep step_with(const FourHoledSphereRep& r, char gen, bool fwd) {
  const auto g = twist_conjugators(r, gen, fwd);
  return {conj(g[0], r.A), conj(g[1], r.B), conj(g[2], r.C), conj(g[3], r.D)};
}

FourHoledSphereRep step_x(const FourHoledSphereRep& r, bool fwd) { return step_with(r, 'X', fwd); }
FourHoledSphereRep step_y(const FourHoledSphereRep& r, bool fwd) { return step_with(r, 'Y', fwd); }
FourHoledSphereRep step_z(const FourHoledSphereRep& r, bool fwd) { return step_with(r, 'Z', fwd); }

FourHoledSphereRep repeat(const FourHoledSphereRep& r, long power,
                          FourHoledSphereRep (*f)(const FourHoledSphereRep&, bool)) {
  FourHoledSphereRep q = r;
  const long n = std::labs(power);
  for (long i = 0; i < n; ++i) {
    q = f(q, power > 0);
  }
  return q;
}

}  // namespace

FourHoledSphereRep FourHoledSphereRep::twist_x(long power) const { return repeat(*this, power, step_x); }
FourHoledSphereRep FourHoledSphereRep::twist_y(long power) const { return repeat(*this, power, step_y); }
FourHoledSphereRep FourHoledSphereRep::twist_z(long power) const { return repeat(*this, power, step_z); }

FourHoledSphereRep FourHoledSphereRep::apply_word(const TwistWord& w) const {
  FourHoledSphereRep r = *this;
  for (const auto& l : w.letters()) {
    if (l.name == "X") {
      r = r.twist_x(l.power);
    } else if (l.name == "Y") {
      r = r.twist_y(l.power);
    } else if (l.name == "Z") {
      r = r.twist_z(l.power);
    } else {
      throw std::invalid_argument("four-holed sphere twists are X, Y and Z, got " + l.name);
    }
  }
  return r;
}

}  // namespace su2twist
