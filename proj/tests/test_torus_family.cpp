#include "su2twist/appendix.hpp"
#include "su2twist/torus_family.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace su2twist;

namespace {

// The seven traces read straight from matrices.
T2Point traces(const TwoHoledTorusRep& r) {
  return {r.A.trace(), r.B.trace(), r.X.trace(), r.Y.trace(), commutator(r.X, r.Y).trace(), (r.A * r.X).trace(),
          (r.X * r.B).trace()};
}

double gap(const T2Point& p, const T2Point& q) {
  return std::max({std::abs(p.a - q.a), std::abs(p.b - q.b), std::abs(p.x - q.x), std::abs(p.k - q.k),
                   std::abs(p.w - q.w), std::abs(p.wp - q.wp)});
}

}  // namespace

TEST_SUITE("torus_family") {
  TEST_CASE("two-holed torus residual") {
    CHECK(t2_residual({2, 2, 2, 2, 2, 2, 2}) == 0.0);
    for (double a : {-1.3, 0.2, 1.7}) {
      for (double x : {-0.4, 1.1}) {
        for (double k : {-1.9, 0.5}) {
          const double eq0 = k * k + k * a * a + 2 * a * a - 4 - x * x * (k - 2 + a * a);
          CHECK(t2_residual({a, -a, x, 0.0, k, 0.0, 0.0}) == doctest::Approx(eq0));
        }
      }
    }
    Rng rng(31);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      worst = std::max(worst, std::abs(t2_residual(traces(TwoHoledTorusRep::random(rng)))));
    }
    CHECK(worst < 1e-9);
  }

  TEST_CASE("twists on matrices match coordinate twists") {
    Rng rng(32);
    double worst = 0.0;
    double res = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const TwoHoledTorusRep r = TwoHoledTorusRep::random(rng);
      const T2Point p = traces(r);
      const T2Point want[] = {tau_k(p), tau_w(p), tau_wp(p), tau_k_inv(p), tau_w_inv(p), tau_wp_inv(p)};
      const char* gens[] = {"K", "W", "Wp"};
      for (int t = 0; t < 6; ++t) {
        const TwoHoledTorusRep s = r.twist(gens[t % 3], t < 3 ? 1 : -1);
        worst = std::max(worst, gap(traces(s), want[t]));
        res = std::max({res, s.relation_residual(), std::abs(t2_residual(want[t]))});
      }
    }
    CHECK(worst < 1e-10);
    CHECK(res < 1e-9);
  }

  TEST_CASE("handle twists keep a, b and k") {
    Rng rng(33);
    const TwoHoledTorusRep r = TwoHoledTorusRep::random(rng);
    for (const char* g : {"X", "Y"}) {
      const T2Point q = traces(r.twist(g, 3));
      CHECK(std::abs(q.a - r.A.trace()) < 1e-12);
      CHECK(std::abs(q.b - r.B.trace()) < 1e-12);
      CHECK(std::abs(q.k - commutator(r.X, r.Y).trace()) < 1e-12);
    }
  }

  TEST_CASE("identity point is fixed") {
    const T2Point id{2, 2, 2, 2, 2, 2, 2};
    for (const T2Point& q : {tau_k(id), tau_w(id), tau_wp(id)}) {
      CHECK(gap(q, id) == 0.0);
    }
  }

  TEST_CASE("tau_K keeps w = w' = 0 when x(a+b) = 0") {
    // a = -b, w = w' = 0, k solved from the surface equation.
    const double a = 0.8;
    const double x = 1.3;
    // eq0 in k: k^2 + k(a^2 - x^2) + 2a^2 - 4 + 2x^2 - a^2 x^2 = 0.
    const double B = a * a - x * x;
    const double C = 2 * a * a - 4 + 2 * x * x - a * a * x * x;
    const double k = (-B + std::sqrt(B * B - 4 * C)) / 2;
    const T2Point p{a, -a, x, 0.0, k, 0.0, 0.0};
    CHECK(std::abs(t2_residual(p)) < 1e-12);
    const T2Point q = tau_k(p);
    CHECK(std::abs(q.w) < 1e-12);
    CHECK(std::abs(q.wp) < 1e-12);
  }

  TEST_CASE("fixed point system") {
    CHECK(fixed_point_system_w({2, 2, 2, 2, 2, 2, 2}));
    const double a = 0.5;
    const double b = -0.5;
    const double x = 1.2;
    CHECK(fixed_point_system_w({a, b, x, 0.0, (a * b + x * x) / 2, 0.0, 0.0}));
    Rng rng(34);
    int hits = 0;
    for (int i = 0; i < 1000; ++i) {
      hits += fixed_point_system_w(traces(TwoHoledTorusRep::random(rng))) ? 1 : 0;
    }
    CHECK(hits == 0);
  }

  TEST_CASE("exceptional predicates for the two-holed torus") {
    const double a = 0.5;
    const double b = -0.3;
    const double x = 0.9;
    const ExceptionalReport e = exceptional_report_t2({a, b, x, 0.0, (a * b + x * x) / 2, 0.1, 0.2});
    CHECK(e.e1.flag);
    const double k = 0.4;
    const double aa = 1.1;
    const double x2 = (k * k + k * aa * aa + 2 * aa * aa - 4) / (k - 2 + aa * aa);
    REQUIRE(x2 >= 0.0);
    const ExceptionalReport f = exceptional_report_t2({aa, -aa, std::sqrt(x2), 0.0, k, 0.0, 0.0});
    CHECK(f.eq0.flag);
    Rng rng(35);
    int flags = 0;
    for (int i = 0; i < 1000; ++i) {
      const ExceptionalReport r = exceptional_report_t2(traces(TwoHoledTorusRep::random(rng)));
      flags += (r.eq0.flag || r.e1.flag || r.e2.flag || r.fixedpoint_system) ? 1 : 0;
    }
    CHECK(flags == 0);
    CHECK_THROWS_AS(exceptional_report_t2({0.5, 0.5, 0.3, 0.0, -2.0, 0.0, 0.0}), DivisionGuard);
    CHECK_THROWS_AS(exceptional_report_t2({0.5, 0.5, 0.3, 0.0, -1.0, 0.0, 0.0}), DivisionGuard);
  }

  TEST_CASE("exceptional predicates for the three-holed torus") {
    const double x = 0.7;
    const double w = -0.4;
    // b^2 = x w b - x^2 - w^2 + 4
    const double b = (x * w + std::sqrt(x * x * w * w - 4 * (x * x + w * w - 4))) / 2;
    CHECK(exceptional_report_t3({b, x, w, 0.0, 0.0}).c2.flag);
    const double c = 0.9;
    const double d = 1.3;
    const ExceptionalReport r = exceptional_report_t3({c * d / 2, x, c * d * x / 4, c, d});
    CHECK(r.c6.flag);
    Rng rng(36);
    std::uniform_real_distribution<double> U(-1.9, 1.9);
    int flags = 0;
    for (int i = 0; i < 1000; ++i) {
      const ExceptionalReport t = exceptional_report_t3({U(rng), U(rng), U(rng), U(rng), U(rng)});
      flags += (t.c1.flag || t.c1_5.flag || t.c2.flag || t.c3.flag || t.c4.flag || t.c5.flag || t.c6.flag ||
                t.c6_5.flag)
                   ? 1
                   : 0;
    }
    CHECK(flags == 0);
    CHECK_THROWS_AS(exceptional_report_t3({2.0, 0.1, 0.2, 0.3, 0.4}), DivisionGuard);
  }

  TEST_CASE("surface round trip") {
    Rng rng(37);
    const TwoHoledTorusRep r = TwoHoledTorusRep::random(rng);
    const SurfaceRep s = r.to_surface();
    CHECK(s.relation_residual() < 1e-12);
    const TwoHoledTorusRep back = TwoHoledTorusRep::from_surface(s);
    CHECK(distance(back.A, r.A) < 1e-15);
    CHECK(gap(back.point(), traces(r)) < 1e-12);
  }

  TEST_CASE("steering the two-holed torus") {
    Rng rng(38);
    const TwoHoledTorusRep r = TwoHoledTorusRep::random(rng);
    const T2Point p = r.point();
    const SteerT2Result same = steer_t2(r, p.x, p.k, 0.1, 1000);
    CHECK(same.success);
    CHECK(same.word.empty());

    // Target (x0, k0) from another handle, with k0 inside I_{a,b}.
    const TraceInterval I = trace_interval(p.a, p.b);
    double x0 = 0.0;
    double k0 = 0.0;
    do {
      const UnitQuaternion X = random_su2(rng);
      const UnitQuaternion Y = random_su2(rng);
      x0 = X.trace();
      k0 = commutator(X, Y).trace();
    } while (!I.contains(k0));
    const SteerT2Result s = steer_t2(r, x0, k0, 0.1, 1000000);
    REQUIRE(s.success);
    const T2Point f = traces(r.apply_word(s.word));
    CHECK(std::abs(f.x - x0) < 0.1);
    CHECK(std::abs(f.k - k0) < 0.1);
  }

  TEST_CASE("non-generic input is rejected") {
    const PolyhedralPair& d = default_case_table().groups.at("D1");
    TwoHoledTorusRep r;
    r.X = d.ai.to_float();
    r.Y = d.ag.to_float();
    r.B = (d.ai * d.ag).to_float();
    r.A = (commutator(r.X, r.Y) * r.B).inverse().normalized();
    CHECK_THROWS_AS(steer_t2(r, 0.0, 0.0, 0.1, 1000), NonGenericInput);
  }
}
