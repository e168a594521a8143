#include "su2twist/sphere_four.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace su2twist;

namespace {

// Expanded by hand from the trace relation of A B C D = 1.
double residual_oracle(double a, double b, double c, double d, double x, double y, double z) {
  return x * x + y * y + z * z + x * y * z - (a * b + c * d) * x - (a * d + b * c) * y - (a * c + b * d) * z +
         a * a + b * b + c * c + d * d + a * b * c * d - 4.0;
}

}  // namespace

TEST_SUITE("sphere_four") {
  TEST_CASE("residual") {
    CHECK(e_kappa_residual({Kappa4(2, 2, 2, 2), 2, 2, 2}) == 0.0);
    CHECK(e_kappa_residual({Kappa4(0, 0, 0, 0), 0, 0, 0}) == -4.0);
    CHECK(e_kappa_residual({Kappa4(0, 0, 0, 0), -2, 2, 2}) == doctest::Approx(residual_oracle(0, 0, 0, 0, -2, 2, 2)));
    CHECK(residual_oracle(0, 0, 0, 0, -2, 2, 2) == 0.0);
    Rng rng(9);
    for (int i = 0; i < 100; ++i) {
      const FourHoledSphereRep r = FourHoledSphereRep::random(rng);
      const T4Point p = r.point();
      CHECK(std::abs(e_kappa_residual(p)) < 1e-9);
      CHECK(e_kappa_residual(p) ==
            doctest::Approx(residual_oracle(p.kappa.a, p.kappa.b, p.kappa.c, p.kappa.d, p.x, p.y, p.z)));
    }
  }

  TEST_CASE("trace intervals") {
    const TraceInterval i22 = trace_interval(2, 2);
    CHECK(i22.lo == 2.0);
    CHECK(i22.hi == 2.0);
    const TraceInterval i00 = trace_interval(0, 0);
    CHECK(i00.lo == -2.0);
    CHECK(i00.hi == 2.0);
    for (double x : {-1.7, -0.5, 0.0, 0.3, 1.9}) {
      const TraceInterval ixx = trace_interval(x, x);
      CHECK(ixx.lo == x * x - 2.0);
      CHECK(ixx.hi == 2.0);
    }
    CHECK_THROWS_AS(Kappa4(2, 2, -2, 2), std::invalid_argument);
  }

  TEST_CASE("level ellipse centre and rotation") {
    for (double x : {-1.5, -0.2, 0.0, 0.7, 1.6}) {
      const SphereEllipse e = x_level_ellipse(Kappa4(0.8, -1.3, 0.0, 0.0), x);
      CHECK(std::abs(e.center[0]) < 1e-14);
      CHECK(std::abs(e.center[1]) < 1e-14);
    }
    CHECK_THROWS_AS(x_level_ellipse(Kappa4(2, 2, 2, 2), 2.0), std::domain_error);
    Rng rng(21);
    for (int i = 0; i < 300; ++i) {
      const T4Point p = FourHoledSphereRep::random(rng).point();
      const SphereEllipse e = x_level_ellipse(p.kappa, p.x);
      const auto u = e.to_circle(p.y, p.z);
      CHECK(u[0] * u[0] + u[1] * u[1] == doctest::Approx(e.rhs).epsilon(1e-8));
      CHECK(e.rhs == doctest::Approx(sphere_rhs_product_form(p.kappa, p.x)).epsilon(1e-8));
      const T4Point q = tau_x4(p);
      const auto v = e.to_circle(q.y, q.z);
      const double ang = std::atan2(u[0] * v[1] - u[1] * v[0], u[0] * v[0] + u[1] * v[1]);
      const double want = std::remainder(e.rotation_angle, 2.0 * std::numbers::pi);
      CHECK(std::abs(std::remainder(ang - want, 2.0 * std::numbers::pi)) < 1e-7);
    }
  }

  TEST_CASE("twists") {
    const T4Point id{Kappa4(2, 2, 2, 2), 2, 2, 2};
    for (const T4Point& q : {tau_x4(id), tau_y4(id), tau_z4(id)}) {
      CHECK(q.x == 2.0);
      CHECK(q.y == 2.0);
      CHECK(q.z == 2.0);
    }
    const T4Point p{Kappa4(0.6, 1.1, 0, 0), 0.0, 0.4, -0.9};
    const T4Point q = tau_x4(p);
    CHECK(q.y == doctest::Approx(-0.4));
    CHECK(q.z == doctest::Approx(0.9));
  }

  TEST_CASE("twists preserve E_kappa at on-surface points") {
    // Points from the ellipse parametrisation, independent of the twist formulas.
    Rng rng(77);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0.0;
    int made = 0;
    while (made < 10000) {
      const T4Point seed = FourHoledSphereRep::random(rng).point();
      const Kappa4& k = seed.kappa;
      const TraceInterval xr = k.x_range();
      const double x = xr.lo + (xr.hi - xr.lo) * U(rng);
      if (std::abs(x) > 1.999) continue;
      const SphereEllipse e = x_level_ellipse(k, x);
      if (e.degenerate) continue;
      const double th = 2.0 * std::numbers::pi * U(rng);
      const auto yz = e.from_circle(std::sqrt(e.rhs) * std::cos(th), std::sqrt(e.rhs) * std::sin(th));
      const T4Point p{k, x, yz[0], yz[1]};
      worst = std::max(worst, std::abs(e_kappa_residual(p)));
      for (const T4Point& q : {tau_x4(p), tau_y4(p), tau_z4(p), tau_x4_inv(p), tau_y4_inv(p), tau_z4_inv(p)}) {
        worst = std::max(worst, std::abs(e_kappa_residual(q)));
      }
      ++made;
    }
    CHECK(worst < 1e-9);
  }

  TEST_CASE("matrix twists agree with coordinates") {
    Rng rng(4);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const FourHoledSphereRep r = FourHoledSphereRep::random(rng);
      const T4Point p = r.point();
      const T4Point qs[] = {tau_x4(p), tau_y4(p), tau_z4(p), tau_x4_inv(p), tau_y4_inv(p), tau_z4_inv(p)};
      const FourHoledSphereRep rs[] = {r.twist_x(), r.twist_y(), r.twist_z(), r.twist_x(-1), r.twist_y(-1), r.twist_z(-1)};
      for (int t = 0; t < 6; ++t) {
        const T4Point m = rs[t].point();
        worst = std::max({worst, std::abs(m.x - qs[t].x), std::abs(m.y - qs[t].y), std::abs(m.z - qs[t].z),
                          rs[t].relation_residual()});
      }
    }
    CHECK(worst < 1e-10);
  }

  TEST_CASE("filtration") {
    CHECK(filtration_member(0.0, 2));
    CHECK(filtration_member(1.0, 3));
    CHECK(filtration_member(-1.0, 3));
    CHECK_FALSE(filtration_member(1.0, 2));
    CHECK(filtration_member(std::sqrt(2.0), 4));
    CHECK(filtration_member(-std::sqrt(2.0), 4));
    CHECK_FALSE(filtration_member(std::sqrt(2.0), 3));
    CHECK_FALSE(filtration_member(0.5, 4));
  }

  TEST_CASE("n_of_eps") {
    int prev = n_of_eps(16.0);
    CHECK(prev <= 3);
    for (double e = 8.0; e > 0.01; e /= 1.7) {
      const int n = n_of_eps(e);
      CHECK(n >= prev);
      prev = n;
    }
    CHECK_THROWS(n_of_eps(0.0));
  }

  TEST_CASE("rotation orbits on generic fibres are eps-dense") {
    // 10 N(eps) twists on an x-fibre with x outside Y_N(eps): angular neighbours are within eps.
    Rng rng(13);
    const double eps = 0.25;
    const int N = n_of_eps(eps);
    int done = 0;
    double worst = 0.0;
    while (done < 100) {
      const T4Point p = FourHoledSphereRep::random(rng).point();
      if (std::abs(p.x) > 1.99 || filtration_member(p.x, N)) continue;
      const SphereEllipse e = x_level_ellipse(p.kappa, p.x);
      if (e.degenerate) continue;
      std::vector<std::array<double, 3>> pts;  // angle, y, z
      T4Point q = p;
      for (int i = 0; i < 10 * N; ++i) {
        const auto u = e.to_circle(q.y, q.z);
        pts.push_back({std::atan2(u[1], u[0]), q.y, q.z});
        q = tau_x4(q);
      }
      std::sort(pts.begin(), pts.end());
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& a = pts[i];
        const auto& b = pts[(i + 1) % pts.size()];
        worst = std::max(worst, std::max(std::abs(a[1] - b[1]), std::abs(a[2] - b[2])));
      }
      ++done;
    }
    CHECK(worst < eps);
  }

  TEST_CASE("delta searches") {
    const double d1 = delta_covering(0.3, -0.7, 0.05);
    CHECK(d1 > 0.0);
    CHECK(covering_predicate(0.3, -0.7, 0.05, d1));
    const double d = delta_inband(1.5, 1.5, 0.05);
    CHECK(inband_predicate(1.5, 1.5, 0.05, d));
    CHECK(delta_inband(1.5, 1.5, 0.02) <= delta_inband(1.5, 1.5, 0.1));
    CHECK_THROWS(delta_inband(2.0, 0.0, 0.1));
  }
}
