#include "su2twist/torus_family.hpp"

#include "su2twist/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace su2twist {

namespace {

// (k, w, wp) are the (x, y, z) coordinates of E_(b,a,x,x).
T4Point to_sphere(const T2Point& p) {
  T4Point q;
  q.kappa.a = p.b;
  q.kappa.b = p.a;
  q.kappa.c = p.x;
  q.kappa.d = p.x;
  q.x = p.k;
  q.y = p.w;
  q.z = p.wp;
  return q;
}

T2Point from_sphere(const T2Point& base, const T4Point& q) {
  T2Point p = base;
  p.k = q.x;
  p.w = q.y;
  p.wp = q.z;
  return p;
}

}  // namespace

double t2_residual(const T2Point& p) {
  const double a = p.a;
  const double b = p.b;
  const double x = p.x;
  const double k = p.k;
  const double w = p.w;
  const double v = p.wp;
  return w * w + v * v + k * k + k * w * v - k * (a * b + x * x) - w * x * (a + b) - v * x * (a + b) + a * a +
         b * b + 2 * x * x + a * b * x * x - 4;
}

T2Point tau_k(const T2Point& p) { return from_sphere(p, tau_x4(to_sphere(p))); }
T2Point tau_w(const T2Point& p) { return from_sphere(p, tau_y4(to_sphere(p))); }
T2Point tau_wp(const T2Point& p) { return from_sphere(p, tau_z4(to_sphere(p))); }
T2Point tau_k_inv(const T2Point& p) { return from_sphere(p, tau_x4_inv(to_sphere(p))); }
T2Point tau_w_inv(const T2Point& p) { return from_sphere(p, tau_y4_inv(to_sphere(p))); }
T2Point tau_wp_inv(const T2Point& p) { return from_sphere(p, tau_z4_inv(to_sphere(p))); }

namespace {

using T2Map = T2Point (*)(const T2Point&);

T2Map t2_map(const std::string& gen, bool forward) {
  if (gen == "K") {
    return forward ? tau_k : tau_k_inv;
  }
  if (gen == "W") {
    return forward ? tau_w : tau_w_inv;
  }
  if (gen == "Wp") {
    return forward ? tau_wp : tau_wp_inv;
  }
  throw std::invalid_argument("coordinate twists of the two-holed torus are K, W and Wp, got " + gen);
}

}  // namespace

T2Point apply_word(const T2Point& p, const TwistWord& w) {
  T2Point q = p;
  for (const auto& l : w.letters()) {
    const T2Map f = t2_map(l.name, l.power > 0);
    for (long i = 0; i < std::labs(l.power); ++i) {
      q = f(q);
    }
  }
  return q;
}

FixedPointSystem fixed_point_system(const T2Point& p, const Tolerances& tol) {
  FixedPointSystem s;
  const double xs = p.x * (p.a + p.b);
  s.r_k = 2 * p.k - (p.a * p.b + p.x * p.x - p.w * p.wp);
  s.r_wp = 2 * p.wp - (xs - p.w * p.k);
  s.r_w = 2 * p.w - (xs - p.wp * p.k);
  s.holds = std::abs(s.r_k) <= tol.criterion && std::abs(s.r_wp) <= tol.criterion && std::abs(s.r_w) <= tol.criterion;
  if (s.holds && std::abs(std::abs(p.k) - 2.0) > 1e-6) {
    const double v = xs / (p.k + 2.0);
    s.consequences_ok = std::abs(p.w - p.wp) <= 1e-6 && std::abs(p.w - v) <= 1e-6;
  }
  return s;
}

bool fixed_point_system_w(const T2Point& p, const Tolerances& tol) { return fixed_point_system(p, tol).holds; }

namespace {

Predicate pred(double r, const Tolerances& tol) { return {r, std::abs(r) <= tol.criterion}; }

}  // namespace

ExceptionalReport exceptional_report_t2(const T2Point& p, const Tolerances& tol) {
  const double a = p.a;
  const double b = p.b;
  const double x = p.x;
  const double k = p.k;
  ExceptionalReport r;
  r.eq0 = pred(k * k + k * a * a + 2 * a * a - 4 - x * x * (k - 2 + a * a), tol);
  r.e1 = pred(2 * k - a * b - x * x, tol);
  const double kp2 = k + 2.0;
  if (std::abs(kp2) <= tol.criterion || std::abs(kp2 * kp2 - (a + b) * (a + b)) <= tol.criterion) {
    throw DivisionGuard("e2 is undefined when (k+2)^2 = (a+b)^2");
  }
  const double ratio = (a + b) / kp2;
  r.e2 = pred(x * x - (2 * k - a * b) / (1 - ratio * ratio), tol);
  r.fixedpoint_system = fixed_point_system_w(p, tol);
  return r;
}

ExceptionalReport exceptional_report_t3(const T3Coords& q, const Tolerances& tol) {
  const double b = q.b;
  const double x = q.x;
  const double w = q.w;
  const double c = q.c;
  const double d = q.d;
  const double den = (2 - b * b / 2) * (2 - b * b / 2);
  if (den <= tol.criterion) {
    throw DivisionGuard("c4 and c5 are undefined for b = +-2");
  }
  const double s1 = d * w + x * c;
  const double s2 = x * d + w * c;
  const double frac = (s1 - b / 2 * s2) * (s2 - b / 2 * s1) / den;
  ExceptionalReport r;
  r.c1 = pred(w * d + x * c, tol);
  r.c1_5 = pred(x * d + w * c, tol);
  r.c2 = pred(b * b - (x * w * b - x * x - w * w + 4), tol);
  r.c3 = pred(2 * b - (x * w + c * d), tol);
  r.c4 = pred(2 * b - c * d - (w * x - frac), tol);
  r.c5 = pred(x * w - frac, tol);
  r.c6 = pred(w - c * d * x / 4, tol);
  r.c6_5 = pred(x - c * d * w / 4, tol);
  return r;
}

TwoHoledTorusRep TwoHoledTorusRep::random(Rng& rng) {
  TwoHoledTorusRep r;
  r.X = random_su2(rng);
  r.Y = random_su2(rng);
  r.B = random_su2(rng);
  r.A = (commutator(r.X, r.Y) * r.B).inverse().normalized();
  return r;
}

TwoHoledTorusRep TwoHoledTorusRep::from_surface(const SurfaceRep& rep) {
  const auto& p = rep.presentation();
  if (p.genus() != 1 || p.boundary() != 2) {
    throw std::invalid_argument("two-holed torus needs (g, n) = (1, 2)");
  }
  const auto& im = rep.images();
  return {im[0], im[1], im[2], im[3]};
}

SurfaceRep TwoHoledTorusRep::to_surface() const { return SurfaceRep(SurfacePresentation(1, 2), {X, Y, B, A}); }

T2Point TwoHoledTorusRep::point() const {
  return {A.trace(), B.trace(), X.trace(), Y.trace(), commutator(X, Y).trace(), (A * X).trace(), (X * B).trace()};
}

double TwoHoledTorusRep::relation_residual() const {
  return distance(commutator(X, Y) * B * A, UnitQuaternion::identity());
}

FourHoledSphereRep TwoHoledTorusRep::sphere_frame() const { return {B, A, X, Y * X.inverse() * Y.inverse()}; }

namespace {

UnitQuaternion qpow(const UnitQuaternion& q, long n) {
  UnitQuaternion base = n < 0 ? q.inverse() : q;
  unsigned long e = static_cast<unsigned long>(std::labs(n));
  UnitQuaternion r = UnitQuaternion::identity();
  while (e != 0) {
    if ((e & 1UL) != 0) {
      r = (r * base).normalized();
    }
    base = (base * base).normalized();
    e >>= 1U;
  }
  return r;
}

UnitQuaternion conj(const UnitQuaternion& g, const UnitQuaternion& q) { return (g * q * g.inverse()).normalized(); }

TwoHoledTorusRep sphere_step(const TwoHoledTorusRep& r, char gen, bool forward) {
  const auto g = twist_conjugators(r.sphere_frame(), gen, forward);
  return {conj(g[2], r.X), (g[3] * r.Y * g[2].inverse()).normalized(), conj(g[0], r.B), conj(g[1], r.A)};
}

}  // namespace

TwoHoledTorusRep TwoHoledTorusRep::twist(const std::string& gen, long power) const {
  if (gen == "X") {
    return {X, (Y * qpow(X, power)).normalized(), B, A};
  }
  if (gen == "Y") {
    return {(X * qpow(Y, power)).normalized(), Y, B, A};
  }
  char s = 0;
  if (gen == "K") {
    s = 'X';
  } else if (gen == "W") {
    s = 'Y';
  } else if (gen == "Wp") {
    s = 'Z';
  } else {
    throw std::invalid_argument("two-holed torus twists are X, Y, K, W and Wp, got " + gen);
  }
  TwoHoledTorusRep r = *this;
  for (long i = 0; i < std::labs(power); ++i) {
    r = sphere_step(r, s, power > 0);
  }
  return r;
}

TwoHoledTorusRep TwoHoledTorusRep::apply_word(const TwistWord& w) const {
  TwoHoledTorusRep r = *this;
  for (const auto& l : w.letters()) {
    r = r.twist(l.name, l.power);
  }
  return r;
}

namespace {

struct Steerer {
  TwoHoledTorusRep cur;
  double x0, k0, eps;
  std::size_t budget;
  SteerT2Result res;
  Rng rng{0x7a115eedULL};

  std::size_t remaining() const { return budget - std::min(budget, res.twists_used); }

  void apply(const std::string& gen, long power) {
    if (power == 0) {
      return;
    }
    cur = cur.twist(gen, power);
    res.word.append(gen, power);
  }

  void apply_handle(const TwistWord& w) {
    cur = cur.apply_word(w);
    res.word.append(w);
  }

  // Scans one coordinate twist, returning the power with the smallest cost; early exit below stop.
  template <class Cost>
  std::pair<long, double> scan(const std::string& gen, std::size_t len, double stop, Cost cost) {
    const T2Map f = t2_map(gen, true);
    const T2Point start = cur.point();
    T2Point q = start;
    long best = 0;
    double best_cost = cost(q);
    const std::size_t n = std::min(len, remaining());
    std::size_t used = 0;
    while (used < n) {
      ++used;
      q = f(q);
      const double c = cost(q);
      if (c < best_cost) {
        best = static_cast<long>(used);
        best_cost = c;
        if (c < stop) {
          break;
        }
      }
    }
    res.twists_used += used;
    if (best != 0) {
      const T2Point predicted = apply_word(start, TwistWord({{gen, best}}));
      apply(gen, best);
      const T2Point got = cur.point();
      res.coordinate_drift = std::max({res.coordinate_drift, std::abs(predicted.k - got.k),
                                       std::abs(predicted.w - got.w), std::abs(predicted.wp - got.wp)});
    }
    return {best, best_cost};
  }

  // A pseudo-random jump along the orbit of gen.
  void jump(const std::string& gen) {
    std::uniform_int_distribution<long> pick(1, 97);
    const long n = std::min<long>(pick(rng), static_cast<long>(remaining()));
    apply(gen, n);
    res.twists_used += static_cast<std::size_t>(n);
  }

  bool moves(const std::string& gen) const {
    const T2Point p = cur.point();
    const T2Point q = t2_map(gen, true)(p);
    return std::abs(q.k - p.k) + std::abs(q.w - p.w) + std::abs(q.wp - p.wp) > 1e-9;
  }
};

}  // namespace

SteerT2Result steer_t2(const TwoHoledTorusRep& rep, double x0, double k0, double eps, std::size_t budget) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("steer_t2 needs eps > 0");
  }
  const T2Point p0 = rep.point();
  if (std::abs(p0.a) >= 2.0 - 1e-9 || std::abs(p0.b) >= 2.0 - 1e-9) {
    throw NonGenericInput("steer_t2 needs boundary traces different from +-2");
  }
  const ImageClassification cls = classify_subgroup({rep.X, rep.Y, rep.B, rep.A});
  if (!cls.is_dense) {
    throw NonGenericInput("steer_t2 needs a dense image, got " + cls.kind);
  }

  Steerer s{rep, x0, k0, eps, budget, {}};
  const auto finish = [&](bool ok, std::string why) {
    s.res.success = ok;
    s.res.final_point = s.cur.point();
    s.res.reason = std::move(why);
    return s.res;
  };
  if (std::abs(p0.x - x0) < eps && std::abs(p0.k - k0) < eps) {
    return finish(true, "already within eps");
  }

  try {
    s.res.delta = delta_inband(p0.a, p0.b, eps / 2);
    s.res.delta_source = "inband";
  } catch (const std::runtime_error&) {
    s.res.delta = delta_covering(p0.a, p0.b, eps / 2);
    s.res.delta_source = "covering";
  }
  const double delta = s.res.delta;
  const int n_general = n_of_eps(eps / 2);
  const std::size_t sphere_scan =
      std::max<std::size_t>(256, static_cast<std::size_t>(std::ceil(32.0 / std::min(delta, eps))));

  while (s.remaining() > 0) {
    // (i) x near 0 on the handle, y in general position.
    {
      SteerOptions o;
      o.x_only = true;
      o.accept = [&](const T1Point& q) {
        return std::abs(q.y) > 1e-6 && !filtration_member(q.y, n_general) && q.x * q.x - 2.0 < k0 - eps / 2;
      };
      const SteerResult r = steer_t1(traces_of(s.cur.handle()), 0.0, 0.0, delta / 2, s.remaining(), o);
      s.res.twists_used += r.twists_used;
      if (!r.success) {
        return finish(false, "handle could not reach x near 0: " + r.reason);
      }
      s.apply_handle(r.word);
    }

    // (iii) tau_K brings w into (-delta, delta), falling back on W or Wp jumps to change the k-fibre.
    bool w_small = false;
    for (int attempt = 0; attempt < 16 && s.remaining() > 0; ++attempt) {
      const auto [pw, cw] = s.scan("K", sphere_scan, delta / 4, [](const T2Point& q) { return std::abs(q.w); });
      (void)pw;
      if (cw < delta) {
        w_small = true;
        break;
      }
      s.jump(s.moves("W") ? "W" : "Wp");
    }
    if (!w_small) {
      continue;  // new handle position next round
    }

    // (iv) tau_W (or tau_Wp when tau_W is stuck) brings k within eps/2 of k0, away from the handle's special values.
    const auto k_cost = [&](const T2Point& q) {
      double c = std::abs(q.k - k0);
      if (is_special_k(q.k, Tolerances{.criterion = 1e-6}) || std::abs(q.k - (q.x * q.x - 2.0)) <= 1e-6) {
        c = std::numeric_limits<double>::infinity();
      }
      return c;
    };
    const std::string kgen = s.moves("W") ? "W" : "Wp";
    const auto [pk, ck] = s.scan(kgen, sphere_scan, eps / 8, k_cost);
    (void)pk;
    if (!(ck < eps / 2)) {
      s.jump("K");
      continue;
    }

    // (v) x to x0 on the handle; k is fixed by the handle twists.
    {
      SteerOptions o;
      o.x_only = true;
      o.accept = [](const T1Point& q) { return one_holed_genericity_shortcut(q.x, q.y, q.z, Tolerances{.criterion = 1e-6}); };
      const SteerResult r = steer_t1(traces_of(s.cur.handle()), x0, 0.0, eps / 2, s.remaining(), o);
      s.res.twists_used += r.twists_used;
      if (!r.success) {
        return finish(false, "handle could not reach x0: " + r.reason);
      }
      s.apply_handle(r.word);
    }

    const T2Point f = s.cur.point();
    if (std::abs(f.x - x0) < eps && std::abs(f.k - k0) < eps) {
      return finish(true, "within eps");
    }
  }
  return finish(false, "budget exhausted");
}

}  // namespace su2twist
