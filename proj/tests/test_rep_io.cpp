#include "su2twist/rep_io.hpp"

#include <doctest.h>

#include <cmath>

using namespace su2twist;

TEST_SUITE("rep_io") {
  TEST_CASE("exact entries select the exact path") {
    const SurfaceRep r = parse_rep(R"({"genus": 1, "boundary": 1, "solve_last": true,
                                       "images": [["1/2", "1/2", "1/2", "1/2"], ["0", "1", "0", "0"]]})");
    CHECK(r.is_exact());
    CHECK(r.relation_residual() < 1e-15);
    const SurfaceRep again = parse_rep(rep_to_json(r));
    CHECK(again.is_exact());
    CHECK(*again.exact_images() == *r.exact_images());
  }

  TEST_CASE("float entries") {
    const SurfaceRep r = parse_rep(R"({"genus": 0, "boundary": 3, "solve_last": true,
                                       "images": [[0.6, 0.8, 0, 0], [0.6, 0, 0.8, 0]]})");
    CHECK_FALSE(r.is_exact());
    const SurfaceRep again = parse_rep(rep_to_json(r));
    for (std::size_t i = 0; i < 3; ++i) CHECK(distance(again.images()[i], r.images()[i]) == 0.0);
  }

  TEST_CASE("presets") {
    CHECK(parse_rep(R"({"appendix": "D2"})").is_exact());
    CHECK(parse_rep(R"({"genus": 2, "boundary": 1, "identity": true})").images()[0].trace() == 2.0);
    const SurfaceRep a = parse_rep(R"({"genus": 1, "boundary": 2, "random": {"seed": 4}})");
    const SurfaceRep b = parse_rep(R"({"genus": 1, "boundary": 2, "random": {"seed": 4}})");
    CHECK(distance(a.images()[3], b.images()[3]) == 0.0);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(parse_rep("{"), ParseError);
    CHECK_THROWS_AS(parse_rep(R"({"genus": 1})"), ParseError);
    CHECK_THROWS_AS(parse_rep(R"({"genus": 1, "boundary": 1, "images": [[1, 0, 0, 0]]})"), ParseError);
    CHECK_THROWS_AS(parse_rep(R"({"genus": 1, "boundary": 1,
                                  "images": [["0","1","0","0"], ["0","0","1","0"], ["1","0","0","0"]]})"),
                    InvariantViolation);
    CHECK_THROWS_AS(parse_rep(R"({"genus": 0, "boundary": 3, "solve_last": true,
                                  "images": [[0.6, 0.9, 0, 0], [1, 0, 0, 0]]})"),
                    InvariantViolation);
    CHECK_THROWS_AS(parse_rep(R"({"appendix": "Q"})"), ParseError);
  }

  TEST_CASE("experiment config") {
    const ExperimentConfig c = parse_config(R"({
      "surface": {"genus": 1, "boundary": 2},
      "seed": 12, "budget": 77, "eps": 0.2, "chart": "two-holed",
      "tolerances": {"chart": 1e-7},
      "steer": {"x0": 0.1, "k0": -0.5}
    })");
    CHECK(c.genus == 1);
    CHECK(c.boundary == 2);
    CHECK(c.seed == 12);
    CHECK(c.budget == 77);
    CHECK(c.tol.chart == 1e-7);
    REQUIRE(c.k0.has_value());
    CHECK(*c.k0 == -0.5);
    const SurfaceRep r = config_rep(c);
    CHECK(r.presentation().boundary() == 2);
    CHECK_THROWS_AS(parse_config(R"({"surface": {"genus": 2, "boundary": 0}})"), ParseError);
    CHECK_THROWS_AS(parse_config(R"({"boundary_traces": [2.5]})"), ParseError);
    CHECK_THROWS_AS(parse_config(R"({"eps": -1})"), ParseError);
    ExperimentConfig bad = c;
    bad.boundary_traces = {2.0, 2.0};
    CHECK_THROWS_AS(config_rep(bad), InvariantViolation);
  }
}
