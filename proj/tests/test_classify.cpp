#include "su2twist/appendix.hpp"
#include "su2twist/classify.hpp"

#include <doctest.h>

#include <cmath>

using namespace su2twist;

namespace {

const PolyhedralPair& pair(const std::string& name) { return default_case_table().groups.at(name); }

std::vector<UnitQuaternion> floats(const PolyhedralPair& p) { return {p.ai.to_float(), p.ag.to_float()}; }

}  // namespace

TEST_SUITE("classify") {
  TEST_CASE("three-holed sphere criteria") {
    CHECK(spin2_criterion_3holed(2, 2, 2));
    CHECK(spin2_criterion_3holed(0, 0, 2));
    CHECK_FALSE(spin2_criterion_3holed(1, 1, 1));
    CHECK(pin2_criterion_3holed(0, 0, 1));
    CHECK_FALSE(pin2_criterion_3holed(2, 2, 2));
    CHECK_FALSE(pin2_criterion_3holed(1, 1, 1));
  }

  TEST_CASE("appendix closures have the polyhedral orders") {
    CHECK(finite_closure(std::vector<ExactQuaternion>{pair("T").ai, pair("T").ag}).elements.size() == 24);
    CHECK(finite_closure(std::vector<ExactQuaternion>{pair("C").ai, pair("C").ag}).elements.size() == 48);
    for (const char* d : {"D1", "D2", "D3"}) {
      const ExactClosure cl = finite_closure(std::vector<ExactQuaternion>{pair(d).ai, pair(d).ag});
      CHECK(cl.closed);
      CHECK(cl.elements.size() == 120);
      CHECK(is_closed_under_product(cl.elements));
    }
    const FiniteClosure fl = finite_closure(floats(pair("D1")));
    CHECK(fl.closed);
    CHECK(fl.elements.size() == 120);
  }

  TEST_CASE("appendix traces") {
    CHECK((pair("T").ai * pair("T").ag).to_float().trace() == doctest::Approx(1.0));
    // tr A_i = -2s in the first icosahedral case.
    CHECK(pair("D1").ai.to_float().trace() == doctest::Approx(-(std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-14));
  }

  TEST_CASE("Pin(2) axis test") {
    CHECK(pin2_geometric_test({UnitQuaternion::unit_i(), UnitQuaternion::unit_j()}).has_value());
    const auto ax = pin2_geometric_test({from_trace_and_axis(0.4, {0, 0, 1}), from_trace_and_axis(1.3, {0, 0, 1})});
    REQUIRE(ax.has_value());
    CHECK(std::abs(std::abs((*ax)[2]) - 1.0) < 1e-12);
    CHECK_FALSE(pin2_geometric_test(floats(pair("T"))).has_value());
  }

  TEST_CASE("subgroup classification") {
    const ImageClassification id = classify_subgroup(std::vector<UnitQuaternion>{UnitQuaternion::identity()});
    CHECK(id.central);
    CHECK(id.in_spin2);
    const ImageClassification t = classify_subgroup(std::vector<ExactQuaternion>{pair("T").ai, pair("T").ag});
    CHECK(t.in_T);
    CHECK(t.in_C);
    CHECK_FALSE(t.is_dense);
    const ImageClassification d = classify_subgroup(floats(pair("D1")));
    CHECK(d.in_D);
    CHECK_FALSE(d.is_dense);
    const ImageClassification g =
        classify_subgroup({from_trace_and_axis(1.0 / 3.0, {0.3, -0.2, 0.9}), from_trace_and_axis(1.0 / 7.0, {0.8, 0.5, 0.1})});
    CHECK(g.is_dense);
    CHECK(g.is_dense == (!g.in_pin2 && !g.in_C && !g.in_D));
    CHECK((!g.in_spin2 || g.in_pin2));
  }

  TEST_CASE("one-holed genericity shortcut") {
    CHECK_FALSE(one_holed_genericity_shortcut(1, 1, 1));
    CHECK(is_special_k(one_holed_k(1, 1, 1)));
    CHECK_FALSE(one_holed_genericity_shortcut(0, 0, 0));
    CHECK(one_holed_genericity_shortcut(0.5, 0.5, 0.5));
    CHECK(one_holed_k(0.5, 0.5, 0.5) == doctest::Approx(-11.0 / 8.0));
    CHECK(special_k_values().size() == 4);
  }

  TEST_CASE("every shipped appendix case verifies") {
    for (const CaseReport& r : verify_all_cases(default_case_table())) {
      INFO(r.id);
      CHECK(r.passed);
    }
    const CaseReport t = verify_appendix_case(default_case_table(), "T-pin-zero");
    REQUIRE(t.escape_traces.size() == 2);
    CHECK(std::abs(std::abs(t.escape_traces[0]) - std::sqrt(2.0)) < 1e-12);
  }

  TEST_CASE("sibling enumeration leaves nothing inconclusive") {
    for (const char* g : {"T", "C", "D1"}) {
      const SiblingSummary s = enumerate_sibling_cases(pair(g));
      INFO(g);
      CHECK(s.inconclusive == 0);
      CHECK(s.total == s.membership + s.escape + s.non_real);
    }
  }
}
