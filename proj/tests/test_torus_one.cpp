#include "su2twist/classify.hpp"
#include "su2twist/torus_one.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace su2twist;

namespace {

double gap(const T1Point& a, const T1Point& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

// Independent evaluation of k from the matrices.
double matrix_k(const HandlePair& h) { return commutator(h.X, h.Y).trace(); }

}  // namespace

TEST_SUITE("torus_one") {
  TEST_CASE("k values") {
    CHECK(k_of({2, 2, 2}) == 2.0);
    CHECK(k_of({0, 0, 0}) == -2.0);
    CHECK(k_of({1, 1, 1}) == 0.0);
  }

  TEST_CASE("coordinate twists") {
    CHECK(tau_x({0, 0, 0}) == T1Point{0, 0, 0});
    CHECK(tau_x({1, 1, 1}) == T1Point{1, 1, 0});
    CHECK(tau_y({1, 1, 1}) == T1Point{1, 1, 0});
    CHECK(k_of(tau_x({1, 1, 1})) == 0.0);
    const T1Point p{0.3, -1.1, 0.7};
    CHECK(gap(tau_x_inv(tau_x(p)), p) < 1e-15);
    CHECK(gap(tau_y_inv(tau_y(p)), p) < 1e-15);
    CHECK(gap(apply_word(p, TwistWord::parse("X2 Y-1")), tau_y_inv(tau_x(tau_x(p)))) < 1e-15);
  }

  TEST_CASE("coordinate and matrix twists agree") {
    Rng rng(101);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const HandlePair h{random_su2(rng), random_su2(rng)};
      const T1Point p = traces_of(h);
      worst = std::max(worst, gap(traces_of(twist_x(h)), tau_x(p)));
      worst = std::max(worst, gap(traces_of(twist_y(h)), tau_y(p)));
      worst = std::max(worst, gap(traces_of(twist_x(h, -1)), tau_x_inv(p)));
      worst = std::max(worst, gap(traces_of(twist_y(h, -1)), tau_y_inv(p)));
      worst = std::max(worst, std::abs(matrix_k(twist_x(h)) - matrix_k(h)));
      worst = std::max(worst, std::abs(k_of(p) - matrix_k(h)));
    }
    CHECK(worst < 1e-10);
    const HandlePair h{random_su2(rng), random_su2(rng)};
    CHECK(gap(traces_of(twist_x(h, 37)), apply_word(traces_of(h), TwistWord::parse("X37"))) < 1e-10);
  }

  TEST_CASE("level ellipse") {
    const LevelEllipse e = level_ellipse_x(2.0, 0.0);
    CHECK(e.rhs == doctest::Approx(4.0));
    CHECK(e.rotation_angle == doctest::Approx(std::numbers::pi / 2));
    const LevelEllipse d = level_ellipse_x(-2.0, 0.0);
    CHECK(d.rhs == doctest::Approx(0.0));
    CHECK(d.degenerate);
    CHECK(level_ellipse_x(0.5, 1.0).rotation_angle == doctest::Approx(std::numbers::pi / 3));
    CHECK_THROWS_AS(level_ellipse_x(0.0, 2.0), std::domain_error);
  }

  TEST_CASE("tau_X is a rotation by arccos(x/2) on the ellipse") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
      const T1Point p = traces_of({random_su2(rng), random_su2(rng)});
      const double k = k_of(p);
      const LevelEllipse e = level_ellipse_x(k, p.x);
      const auto u = e.to_circle(p.y, p.z);
      const T1Point q = tau_x(p);
      const auto v = e.to_circle(q.y, q.z);
      CHECK(u[0] * u[0] + u[1] * u[1] == doctest::Approx(e.rhs).epsilon(1e-9));
      const double ang = std::atan2(u[0] * v[1] - u[1] * v[0], u[0] * v[0] + u[1] * v[1]);
      CHECK(std::abs(std::abs(ang) - e.rotation_angle) < 1e-9);
      const auto back = e.from_circle(u[0], u[1]);
      CHECK(std::abs(back[0] - p.y) < 1e-12);
    }
  }

  TEST_CASE("rational rotation has period q") {
    // x = 2cos(2 pi p/q): the rotation angle is 2 pi p/q, so tau_X^q fixes every point of the fibre.
    const double x = 2.0 * std::cos(2.0 * std::numbers::pi * 2.0 / 7.0);
    T1Point p{x, 0.4, 0.0};
    p.z = (x * p.y + std::sqrt(x * x * p.y * p.y - 4 * (x * x + p.y * p.y - 2 - 0.3))) / 2;  // k = 0.3
    CHECK(std::abs(k_of(p) - 0.3) < 1e-12);
    T1Point q = p;
    for (int i = 0; i < 7; ++i) q = tau_x(q);
    CHECK(gap(q, p) < 1e-12);
    CHECK(gap(tau_x(tau_x(tau_x(p))), p) > 1e-3);
  }

  TEST_CASE("Pin(2) locus has six points") {
    for (int i = 0; i < 20; ++i) {
      const double k = -2.0 + 4.0 * (i + 0.5) / 20.0;
      const auto pts = pin2_locus_points(k);
      REQUIRE(pts.size() == 6);
      for (const auto& p : pts) {
        CHECK(std::abs(k_of(p) - k) < 1e-12);
        CHECK(on_one_holed_pin2_locus(p.x, p.y, p.z));
      }
    }
    const auto z = pin2_locus_points(0.0);
    CHECK(std::abs(std::abs(z[0].x + z[0].y + z[0].z) - std::sqrt(2.0)) < 1e-15);
    const auto m = pin2_locus_points(-1.0);
    CHECK(std::abs(std::abs(m[0].x + m[0].y + m[0].z) - 1.0) < 1e-15);
    CHECK_THROWS(pin2_locus_points(2.0));
  }

  TEST_CASE("E_2 contains the identity character") { CHECK(k_of({2, 2, 2}) == 2.0); }

  TEST_CASE("steering") {
    const T1Point p{0.5, 0.5, 0.5};
    const SteerResult same = steer_t1(p, 0.5, 0.5, 0.01, 100);
    CHECK(same.success);
    CHECK(same.word.empty());
    const SteerResult r = steer_t1(p, 0.0, 0.0, 0.05, 100000);
    REQUIRE(r.success);
    const T1Point f = apply_word(p, r.word);
    CHECK(std::abs(f.x) < 0.05);
    CHECK(std::abs(f.y) < 0.05);
    CHECK(r.twists_used <= 100000);
    const SteerResult tiny = steer_t1(p, 0.0, 0.0, 1e-4, 5);
    CHECK_FALSE(tiny.success);
  }
}
