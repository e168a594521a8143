#include "su2twist/torus_one.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace su2twist {

double k_of(const T1Point& p) { return p.x * p.x + p.y * p.y + p.z * p.z - p.x * p.y * p.z - 2.0; }

T1Point tau_x(const T1Point& p) { return {p.x, p.z, p.x * p.z - p.y}; }
T1Point tau_y(const T1Point& p) { return {p.z, p.y, p.y * p.z - p.x}; }
T1Point tau_x_inv(const T1Point& p) { return {p.x, p.x * p.y - p.z, p.y}; }
T1Point tau_y_inv(const T1Point& p) { return {p.y * p.x - p.z, p.y, p.x}; }

namespace {

T1Point step(const T1Point& p, char gen, bool forward) {
  if (gen == 'X') {
    return forward ? tau_x(p) : tau_x_inv(p);
  }
  return forward ? tau_y(p) : tau_y_inv(p);
}

char generator_of(const TwistLetter& l) {
  if (l.name == "X" || l.name == "Y") {
    return l.name[0];
  }
  throw std::invalid_argument("one-holed torus twists are X and Y, got " + l.name);
}

UnitQuaternion power(const UnitQuaternion& q, long n) {
  UnitQuaternion base = n < 0 ? q.inverse() : q;
  unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
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

}  // namespace

T1Point apply_word(const T1Point& p, const TwistWord& w) {
  T1Point q = p;
  for (const auto& l : w.letters()) {
    const char g = generator_of(l);
    const long n = std::labs(l.power);
    for (long i = 0; i < n; ++i) {
      q = step(q, g, l.power > 0);
    }
  }
  return q;
}

T1Point traces_of(const HandlePair& h) { return {h.X.trace(), h.Y.trace(), (h.X * h.Y).trace()}; }

HandlePair twist_x(const HandlePair& h, long p) { return {h.X, (h.Y * power(h.X, p)).normalized()}; }

HandlePair twist_y(const HandlePair& h, long p) { return {(h.X * power(h.Y, p)).normalized(), h.Y}; }

HandlePair apply_word(const HandlePair& h, const TwistWord& w) {
  HandlePair r = h;
  for (const auto& l : w.letters()) {
    r = generator_of(l) == 'X' ? twist_x(r, l.power) : twist_y(r, l.power);
  }
  return r;
}

std::array<double, 2> LevelEllipse::to_circle(double y, double z) const {
  return {std::sqrt(coeff_sum) * (y + z), std::sqrt(coeff_diff) * (y - z)};
}

std::array<double, 2> LevelEllipse::from_circle(double u, double v) const {
  const double s = u / std::sqrt(coeff_sum);
  const double d = v / std::sqrt(coeff_diff);
  return {(s + d) / 2.0, (s - d) / 2.0};
}

LevelEllipse level_ellipse_x(double k, double x) {
  if (!(x > -2.0 && x < 2.0)) {
    throw std::domain_error("level_ellipse_x needs x in (-2, 2)");
  }
  LevelEllipse e;
  e.fixed = 'x';
  e.value = x;
  e.coeff_sum = (2.0 - x) / 4.0;
  e.coeff_diff = (2.0 + x) / 4.0;
  e.rhs = 2.0 + k - x * x;
  e.rotation_angle = std::acos(x / 2.0);
  e.degenerate = e.rhs <= 0.0;
  return e;
}

double y_range_on_x_fibre(double k, double x) {
  const double num = k + 2.0 - x * x;
  const double den = 4.0 - x * x;
  if (num <= 0.0 || den <= 0.0) {
    return 0.0;
  }
  return 2.0 * std::sqrt(num / den);
}

std::vector<T1Point> pin2_locus_points(double k) {
  if (!(k > -2.0 && k < 2.0)) {
    throw std::domain_error("pin2_locus_points needs k in (-2, 2)");
  }
  const double c = std::sqrt(k + 2.0);
  return {{c, 0, 0}, {-c, 0, 0}, {0, c, 0}, {0, -c, 0}, {0, 0, c}, {0, 0, -c}};
}

namespace {

struct Scan {
  long power = 0;
  T1Point point;
  double cost = std::numeric_limits<double>::infinity();
  std::size_t used = 0;
};

}  // namespace

SteerResult steer_t1(const T1Point& p, double x0, double y0, double eps, std::size_t budget,
                     const SteerOptions& opts) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("steer_t1 needs eps > 0");
  }
  const double k = k_of(p);
  const std::size_t scan =
      opts.scan_length != 0 ? opts.scan_length
                            : std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(64.0 / eps)));

  SteerResult res;
  T1Point cur = p;
  const auto done = [&](const T1Point& q) {
    return std::abs(q.x - x0) < eps && (opts.x_only || std::abs(q.y - y0) < eps) && (!opts.accept || opts.accept(q));
  };
  const auto finish = [&](bool ok, std::string why) {
    res.success = ok;
    res.final_point = cur;
    res.reason = std::move(why);
    return res;
  };
  if (done(cur)) {
    return finish(true, "already within eps");
  }

  // Cost of landing at x on the way to (x0, y0): distance in x plus how far y0 sits outside the x-fibre.
  const auto cost_x = [&](const T1Point& q) {
    if (opts.x_only) {
      double c = std::abs(q.x - x0);
      if (opts.accept && c < eps && !opts.accept(q)) {
        c = eps;
      }
      return c;
    }
    const double excess = std::max(0.0, std::abs(y0) - y_range_on_x_fibre(k, q.x));
    return std::max(std::abs(q.x - x0), excess);
  };
  const auto cost_y = [&](const T1Point& q) {
    // With x_only the tau_X step just looks for a y-fibre wide enough to reach x0.
    double c = opts.x_only ? std::max(0.0, std::abs(x0) - y_range_on_x_fibre(k, q.y)) : std::abs(q.y - y0);
    if (opts.accept && std::abs(q.x - x0) < eps && c < eps && !opts.accept(q)) {
      c = eps;  // close but rejected by the caller's predicate
    }
    return c;
  };

  Rng rng(0x5eed1ULL);
  const auto run_scan = [&](char gen, const auto& cost, std::size_t len) {
    Scan best{0, cur, cost(cur), 0};
    T1Point q = cur;
    for (std::size_t i = 1; i <= len; ++i) {
      q = step(q, gen, true);
      const double c = cost(q);
      if (c < best.cost) {
        best = {static_cast<long>(i), q, c, 0};
        if (c < eps / 4) {
          best.used = i;
          return best;
        }
      }
    }
    best.used = len;
    return best;
  };

  bool moveY = true;  // tau_Y moves x
  int stalls = 0;
  int degenerate_run = 0;
  while (true) {
    const std::size_t remaining = budget - res.twists_used;
    if (remaining == 0) {
      return finish(false, "budget exhausted");
    }
    const std::size_t len = std::min(scan, remaining);
    const char gen = moveY ? 'Y' : 'X';
    // A fibre that is a single point cannot move anything.
    const double other = moveY ? cur.y : cur.x;
    const bool degenerate = 2.0 + k - other * other <= 0.0;
    Scan best;
    if (degenerate) {
      if (++degenerate_run >= 2) {
        return finish(false, "both fibres degenerate");
      }
      best = {0, cur, 0.0, 0};
    } else {
      degenerate_run = 0;
      best = moveY ? run_scan('Y', cost_x, len) : run_scan('X', cost_y, len);
      res.twists_used += best.used;
    }
    const bool progressed = best.power != 0;
    if (progressed) {
      res.word.append(std::string(1, gen), best.power);
      cur = best.point;
    }
    if (done(cur)) {
      return finish(true, "within eps");
    }
    const bool phase_ok = moveY ? cost_x(cur) < eps : cost_y(cur) < eps;
    if (!phase_ok || !progressed) {
      ++stalls;
    } else {
      stalls = 0;
    }
    if (stalls >= 2) {
      // Both rotations look periodic or unhelpful from here: jump to a pseudo-random orbit point.
      const char pg = moveY ? 'X' : 'Y';
      const double o = pg == 'Y' ? cur.y : cur.x;
      if (2.0 + k - o * o > 0.0) {
        std::uniform_int_distribution<long> pick(1, static_cast<long>(std::min<std::size_t>(scan, 97)));
        const long n = pick(rng);
        const std::size_t use = std::min<std::size_t>(static_cast<std::size_t>(n), budget - res.twists_used);
        for (std::size_t i = 0; i < use; ++i) {
          cur = step(cur, pg, true);
        }
        res.twists_used += use;
        res.word.append(std::string(1, pg), static_cast<long>(use));
      }
      stalls = 0;
      // The jump changed the fibre of the other generator; scan that one next.
      moveY = pg == 'X';
      continue;
    }
    moveY = !moveY;
  }
}

}  // namespace su2twist
