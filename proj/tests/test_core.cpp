#include "su2twist/exact_quaternion.hpp"
#include "su2twist/qf_parse.hpp"
#include "su2twist/qfield.hpp"
#include "su2twist/quaternion.hpp"
#include "su2twist/surface.hpp"
#include "su2twist/twist_word.hpp"
#include "su2twist/word.hpp"

#include <doctest.h>

#include <cmath>

using namespace su2twist;

TEST_SUITE("core") {
  TEST_CASE("quaternion table and identity") {
    const UnitQuaternion q{0.5, 0.5, -0.5, 0.5};
    CHECK(distance(quat_mul(UnitQuaternion::identity(), q), q) == 0.0);
    CHECK(distance(UnitQuaternion::unit_i() * UnitQuaternion::unit_j(), UnitQuaternion::unit_k()) == 0.0);
    CHECK(trace(UnitQuaternion::identity()) == 2.0);
    CHECK(trace(UnitQuaternion::unit_i()) == 0.0);
  }

  TEST_CASE("trace product identity") {
    CHECK(trace_product_identity_check(UnitQuaternion::identity(), UnitQuaternion::identity()) == 0.0);
    CHECK(std::abs(trace_product_identity_check(UnitQuaternion::unit_i(), UnitQuaternion::unit_j())) < 1e-15);
    Rng rng(17);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      worst = std::max(worst, std::abs(trace_product_identity_check(random_su2(rng), random_su2(rng))));
    }
    CHECK(worst < 1e-10);
  }

  TEST_CASE("Haar samples") {
    const UnitQuaternion a = random_su2(std::uint64_t{42});
    const UnitQuaternion b = random_su2(std::uint64_t{42});
    CHECK(distance(a, b) == 0.0);
    Rng rng(3);
    double mean = 0.0;
    double worst = 0.0;
    constexpr int n = 100000;
    for (int i = 0; i < n; ++i) {
      const UnitQuaternion q = random_su2(rng);
      mean += q.trace();
      worst = std::max(worst, std::abs(q.norm() - 1.0));
    }
    CHECK(std::abs(mean / n) < 0.02);
    CHECK(worst < 1e-12);
  }

  TEST_CASE("from_trace_and_axis") {
    const UnitQuaternion q = from_trace_and_axis(0.6, {0.0, 3.0, 4.0});
    CHECK(q.trace() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(std::abs(q.norm() - 1.0) < 1e-15);
    const Vec3 ax = rotation_axis(q);
    CHECK(ax[1] == doctest::Approx(0.6));
    CHECK(ax[2] == doctest::Approx(0.8));
  }

  TEST_CASE("quadratic field arithmetic is exact") {
    const QFElement s2 = QFElement::sqrt2();
    const QFElement s5 = QFElement::sqrt5();
    const QFElement s10 = QFElement::sqrt10();
    CHECK(s2 * s5 == s10);
    CHECK(s2 * s10 == QFElement(2) * s5);
    CHECK(s5 * s10 == QFElement(5) * s2);
    CHECK(s2 * s2 == QFElement(2));
    const QFElement u = QFElement::rational(1, 3) + s5;
    CHECK(u * u.inverse() == QFElement(1));
    CHECK(QFElement::golden_r() - QFElement::golden_s() == QFElement::rational(1, 2));
    CHECK_THROWS_AS(QFElement(0).inverse(), std::domain_error);
  }

  TEST_CASE("value parser") {
    const ParsedValue a = parse_value("(1+sqrt5)/4");
    REQUIRE(a.exact.has_value());
    CHECK(*a.exact == QFElement::golden_r());
    const ParsedValue b = parse_value("0.25");
    CHECK_FALSE(b.exact.has_value());
    CHECK(b.to_double() == 0.25);
    const ParsedValue c = parse_value("sqrt(8)/2");
    REQUIRE(c.exact.has_value());
    CHECK(*c.exact == QFElement::sqrt2());
    CHECK_THROWS_AS(parse_value("1/"), std::invalid_argument);
  }

  TEST_CASE("exact unit quaternions") {
    const QFElement h = QFElement::rational(1, 2);
    const ExactQuaternion q{h, h, h, h};
    CHECK(q.is_unit());
    CHECK(q * q.inverse() == ExactQuaternion::identity());
    CHECK(q.to_float().trace() == 1.0);
  }

  TEST_CASE("free words and the surface relation") {
    const FreeWord w = FreeWord::parse("A1 A2 A1^-1 A2^-1");
    CHECK(w.size() == 4);
    CHECK((w * w.inverse()).reduced().empty());
    const SurfacePresentation pres(2, 1);
    CHECK(pres.generator_count() == 5);
    Rng rng(8);
    const SurfaceRep rep = SurfaceRep::random(2, 1, rng);
    CHECK(rep.relation_residual() < 1e-9);
    CHECK(distance(rep.evaluate(FreeWord{}), UnitQuaternion::identity()) == 0.0);
    CHECK(distance(rep.evaluate(pres.relation()), UnitQuaternion::identity()) < 1e-9);
    const UnitQuaternion z1 = from_trace_and_axis(0.3, {0, 0, 1});
    const UnitQuaternion z2 = from_trace_and_axis(-1.1, {0, 0, 1});
    CHECK(distance(commutator(z1, z2), UnitQuaternion::identity()) < 1e-15);
  }

  TEST_CASE("twist words") {
    const TwistWord w = TwistWord::parse("X2 Y-1 X1");
    CHECK(w.length() == 4);
    CHECK(TwistWord::parse(w.to_string()) == w);
    TwistWord v;
    v.append("X", 2);
    v.append("X", -2);
    CHECK(v.empty());
    CHECK(w.inverse().inverse() == w);
  }
}
