#include "su2twist/appendix.hpp"
#include "su2twist/orbit_lab.hpp"
#include "su2twist/qf_parse.hpp"
#include "su2twist/torus_family.hpp"
#include "su2twist/torus_one.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

using namespace su2twist;

namespace {

SurfaceRep icosahedral_one_holed() {
  const PolyhedralPair& d = default_case_table().groups.at("D1");
  const ExactQuaternion C = (d.ai * d.ag * d.ai.inverse() * d.ag.inverse()).inverse();
  return SurfaceRep(SurfacePresentation(1, 1), std::vector<ExactQuaternion>{d.ai, d.ag, C});
}

SurfaceRep solve_last(int g, int n, std::vector<UnitQuaternion> im) {
  const SurfacePresentation pres(g, n);
  im.push_back(UnitQuaternion::identity());
  im.back() = evaluate_word(im, pres.relation()).inverse().normalized();
  return SurfaceRep(pres, std::move(im));
}

}  // namespace

TEST_SUITE("orbit_lab") {
  TEST_CASE("standard pants decompositions") {
    const auto count = [](int g, int n) {
      const PantsDecomposition P = PantsDecomposition::standard(g, n);
      return std::pair<std::size_t, std::size_t>{P.curve_count(), P.pants.size()};
    };
    CHECK(count(2, 1) == std::pair<std::size_t, std::size_t>{4, 3});
    CHECK(count(1, 1) == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(count(1, 2) == std::pair<std::size_t, std::size_t>{2, 2});
    CHECK(count(0, 4) == std::pair<std::size_t, std::size_t>{1, 2});
    CHECK(count(0, 5) == std::pair<std::size_t, std::size_t>{2, 3});
    CHECK(count(2, 0) == std::pair<std::size_t, std::size_t>{3, 2});
    CHECK(count(3, 2) == std::pair<std::size_t, std::size_t>{3 * 3 - 3 + 2, 2 * 3 - 2 + 2});
    CHECK_THROWS_AS(PantsDecomposition::standard(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(PantsDecomposition::standard(1, 0), std::invalid_argument);
  }

  TEST_CASE("pants coordinates") {
    const SurfaceRep id = SurfaceRep::identity(2, 1);
    for (double b : pants_coords(id, PantsDecomposition::standard(2, 1))) CHECK(b == 2.0);
    Rng rng(41);
    const SurfaceRep one = SurfaceRep::random(1, 1, rng);
    const auto beta = pants_coords(one, PantsDecomposition::standard(1, 1));
    REQUIRE(beta.size() == 1);
    CHECK(beta[0] == doctest::Approx(one.images()[0].trace()));
  }

  TEST_CASE("pants inequalities") {
    const PantsDecomposition P = PantsDecomposition::standard(2, 1);
    for (double r : check_pants_inequalities({2, 2, 2, 2}, P, {2})) CHECK(r == 0.0);
    for (double r : check_pants_inequalities({0, 0, 0, 0}, P, {0})) CHECK(r == 4.0);
    Rng rng(42);
    double worst = 1.0;
    for (int i = 0; i < 300; ++i) {
      const SurfaceRep rep = SurfaceRep::random(2, 1, rng);
      for (double r : check_pants_inequalities(pants_coords(rep, P), P, rep.boundary_traces())) {
        worst = std::min(worst, r);
      }
    }
    CHECK(worst >= -1e-8);
    CHECK_THROWS(check_pants_inequalities({1.0}, P, {2}));
  }

  TEST_CASE("fibre rotation angles") {
    const auto a = fibre_rotation_angles({2.0, 0.0, 1.0});
    CHECK(a[0] == 0.0);
    CHECK(a[1] == doctest::Approx(std::numbers::pi / 2));
    CHECK(a[2] == doctest::Approx(std::numbers::pi / 3));
  }

  TEST_CASE("generic handle search") {
    Rng rng(43);
    const SurfaceRep dense = SurfaceRep::random(2, 1, rng);
    const GenericHandleResult r = find_generic_handle(dense);
    REQUIRE(r.found);
    CHECK(r.handle.label == "(A1, A3)");
    CHECK(r.trail.empty());

    // <A1, A2> abelian about z, A3 oblique: the first escape is (A1, A2 A3).
    const SurfaceRep ab = solve_last(1, 2,
                                     {from_trace_and_axis(0.7, {0, 0, 1}), from_trace_and_axis(-0.4, {0, 0, 1}),
                                      from_trace_and_axis(0.3, {0.6, 0.2, 0.5})});
    const GenericHandleResult s = find_generic_handle(ab);
    REQUIRE(s.found);
    CHECK(s.handle.label == "(A1, A2 A3)");
    REQUIRE(s.trail.size() == 1);
    CHECK(s.trail[0].kind == "spin2_infinite");
  }

  TEST_CASE("escape handle of the all-zero tetrahedral case") {
    const PolyhedralPair& t = default_case_table().groups.at("T");
    const ExactQuaternion aj{*parse_value("-sqrt2/2").exact, *parse_value("sqrt2/2").exact, QFElement(0), QFElement(0)};
    std::vector<ExactQuaternion> im{t.ai, t.ag, aj, ExactQuaternion::identity()};
    const SurfacePresentation pres(1, 2);
    im[3] = evaluate_word(im, pres.relation()).inverse();
    const GenericHandleResult r = find_generic_handle(SurfaceRep(pres, im));
    bool seen = false;
    for (const auto& c : r.trail) {
      if (c.label == "(A1, A2 A1 A3)") {
        seen = true;
        CHECK(c.kind != "T");
        CHECK(c.kind.find("pin2") == std::string::npos);
        CHECK(c.kind != "binary_dihedral");
      }
    }
    CHECK(seen);
  }

  TEST_CASE("chart metadata") {
    CHECK(chart_twists(ChartKind::TwoHoled) == std::vector<std::string>{"X", "Y", "K", "W", "Wp"});
    CHECK(chart_from_string(to_string(ChartKind::FourHoled)) == ChartKind::FourHoled);
    CHECK_THROWS(chart_from_string("klein-bottle"));
    CHECK(chart_coordinate_names(ChartKind::Surface, 2, 1).size() == 4);
  }

  TEST_CASE("orbit samples stay on their chart") {
    Rng rng(44);
    OrbitOptions o;
    o.budget = 1;
    const SurfaceRep one = SurfaceRep::random(1, 1, rng);
    CHECK(orbit_sample(one, o).size() == 1);
    o.budget = 0;
    CHECK_THROWS_AS(orbit_sample(one, o), std::invalid_argument);

    o.budget = 100000;
    o.seed = 5;
    const OrbitSample s = orbit_sample(one, o);
    CHECK(s.size() == 100000);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, std::abs(chart_residual(s, s.point(i))));
    CHECK(worst < 1e-8);
    CHECK(s.max_invariant_drift < 1e-8);

    o.chart = ChartKind::TwoHoled;
    o.budget = 20000;
    const OrbitSample t = orbit_sample(SurfaceRep::random(1, 2, rng), o);
    worst = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) worst = std::max(worst, std::abs(chart_residual(t, t.point(i))));
    CHECK(worst <= 1e-8);

    o.chart = ChartKind::FourHoled;
    const OrbitSample f = orbit_sample(SurfaceRep::random(0, 4, rng), o);
    worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(chart_residual(f, f.point(i))));
    CHECK(worst <= 1e-8);

    o.chart = ChartKind::Surface;
    const SurfaceRep g2 = SurfaceRep::random(2, 1, rng);
    const OrbitSample g = orbit_sample(g2, o);
    CHECK(g.dim == 4);
    CHECK(g.max_invariant_drift < 1e-9);

    o.chart = ChartKind::TwoHoled;
    CHECK_THROWS_AS(orbit_sample(one, o), std::invalid_argument);
  }

  TEST_CASE("breadth-first words replay to their points") {
    Rng rng(45);
    const SurfaceRep one = SurfaceRep::random(1, 1, rng);
    OrbitOptions o;
    o.strategy = Strategy::BreadthFirst;
    o.budget = 200;
    const OrbitSample s = orbit_sample(one, o);
    CHECK(s.words_from_start);
    CHECK(s.size() == 200);
    const HandlePair h{one.images()[0], one.images()[1]};
    CHECK(s.words[1] == "X1");
    for (std::size_t i = 0; i < s.size(); i += 17) {
      const T1Point p = traces_of(apply_word(h, TwistWord::parse(s.words[i])));
      CHECK(std::abs(p.x - s.point(i)[0]) < 1e-12);
      CHECK(std::abs(p.y - s.point(i)[1]) < 1e-12);
    }
  }

  TEST_CASE("sharded walks are deterministic") {
    Rng rng(46);
    const SurfaceRep one = SurfaceRep::random(1, 1, rng);
    OrbitOptions o;
    o.budget = 40001;
    o.seed = 9;
    o.workers = 4;
    const OrbitSample a = orbit_sample(one, o);
    const OrbitSample b = orbit_sample(one, o);
    CHECK(a.coords == b.coords);
    CHECK(a.words == b.words);
    CHECK(a.size() == 40001);
  }

  TEST_CASE("finite images stay finite") {
    OrbitOptions o;
    o.budget = 50000;
    const OrbitSample s = orbit_sample(icosahedral_one_holed(), o);
    CHECK(s.exact_finite_image);
    std::set<std::array<long long, 3>> pts;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double* p = s.point(i);
      pts.insert({std::llround(p[0] * 1e9), std::llround(p[1] * 1e9), std::llround(p[2] * 1e9)});
    }
    CHECK(pts.size() <= 729);  // three traces from the 9 trace values of D
    CHECK(s.max_invariant_drift < 1e-12);
  }

  TEST_CASE("density report") {
    // A sample at every cell centre of a chart without an equation covers everything.
    OrbitSample grid;
    grid.chart = ChartKind::Surface;
    grid.dim = 2;
    grid.coordinate_names = {"b1", "b2"};
    for (int i = 0; i < 40; ++i) {
      for (int j = 0; j < 40; ++j) {
        grid.coords.push_back(-2.0 + 0.1 * (i + 0.5));
        grid.coords.push_back(-2.0 + 0.1 * (j + 0.5));
        grid.words.emplace_back("");
      }
    }
    const Box box{{-2, -2}, {2, 2}};
    const DensityReport full = density_report(grid, box, 0.1);
    CHECK(full.coverage == 1.0);
    CHECK(full.total_cells == 1600);

    OrbitSample empty = grid;
    empty.coords.clear();
    empty.words.clear();
    CHECK(density_report(empty, box, 0.1).coverage == 0.0);
    CHECK_THROWS_AS(density_report(grid, Box{{0, 0}, {0, 1}}, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(density_report(grid, box, 0.0), std::invalid_argument);

    // Coverage grows along nested samples of one walk.
    Rng rng(47);
    const SurfaceRep one = SurfaceRep::random(1, 1, rng);
    OrbitOptions o;
    o.seed = 3;
    double prev = 0.0;
    const Box cube{{-2, -2, -2}, {2, 2, 2}};
    for (std::size_t b : {1000, 10000, 100000}) {
      o.budget = b;
      const double c = density_report(orbit_sample(one, o), cube, 0.1).coverage;
      CHECK(c >= prev);
      prev = c;
    }
    CHECK(prev > 0.5);
    o.budget = 100000;
    const double finite = density_report(orbit_sample(icosahedral_one_holed(), o), cube, 0.1).coverage;
    CHECK(finite < 0.2);
  }

  TEST_CASE("csv and json output") {
    Rng rng(48);
    OrbitOptions o;
    o.budget = 3;
    const OrbitSample s = orbit_sample(SurfaceRep::random(1, 1, rng), o);
    std::ostringstream os;
    write_csv(os, s);
    const std::string text = os.str();
    CHECK(text.rfind("x,y,z,word\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    const DensityReport r = density_report(s, Box{{-2, -2, -2}, {2, 2, 2}}, 0.5);
    CHECK(to_json_string(r).find("\"coverage\"") != std::string::npos);
  }
}
