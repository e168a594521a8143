#include "su2twist/classify.hpp"
#include "su2twist/orbit_lab.hpp"
#include "su2twist/rep_io.hpp"
#include "su2twist/sphere_four.hpp"
#include "su2twist/torus_family.hpp"
#include "su2twist/torus_one.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace su2twist;

namespace {

ImageClassification classify_rep(const SurfaceRep& rep) {
  return rep.is_exact() ? classify_subgroup(*rep.exact_images()) : classify_subgroup(rep.images());
}

py::tuple xyz(const T1Point& p) { return py::make_tuple(p.x, p.y, p.z); }

}  // namespace

PYBIND11_MODULE(_su2twist, m) {
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_ValueError);
  py::register_exception<NonGenericInput>(m, "NonGenericInput", PyExc_ValueError);

  py::class_<UnitQuaternion>(m, "Quaternion")
      .def(py::init<>())
      .def(py::init([](double w, double x, double y, double z) { return UnitQuaternion{w, x, y, z}; }))
      .def_readwrite("w", &UnitQuaternion::w)
      .def_readwrite("x", &UnitQuaternion::x)
      .def_readwrite("y", &UnitQuaternion::y)
      .def_readwrite("z", &UnitQuaternion::z)
      .def("trace", &UnitQuaternion::trace)
      .def("inverse", &UnitQuaternion::inverse)
      .def("__mul__", [](const UnitQuaternion& a, const UnitQuaternion& b) { return a * b; })
      .def("__repr__", [](const UnitQuaternion& q) {
        std::ostringstream os;
        os << q;
        return os.str();
      });
  m.def("random_su2", py::overload_cast<std::uint64_t>(&random_su2), py::arg("seed"));
  m.def("commutator", [](const UnitQuaternion& a, const UnitQuaternion& b) { return commutator(a, b); });

  m.def("k_of", [](double x, double y, double z) { return k_of({x, y, z}); });
  m.def("tau_x", [](double x, double y, double z) { return xyz(tau_x({x, y, z})); });
  m.def("tau_y", [](double x, double y, double z) { return xyz(tau_y({x, y, z})); });
  m.def("apply_word", [](double x, double y, double z, const std::string& w) {
    return xyz(apply_word(T1Point{x, y, z}, TwistWord::parse(w)));
  });
  m.def("is_special_k", [](double k) { return is_special_k(k); });
  m.def("pin2_locus_points", [](double k) {
    py::list out;
    for (const auto& p : pin2_locus_points(k)) out.append(xyz(p));
    return out;
  });
  m.def("steer_t1", [](double x, double y, double z, double x0, double y0, double eps, std::size_t budget) {
    const SteerResult r = steer_t1({x, y, z}, x0, y0, eps, budget);
    return py::dict("success"_a = r.success, "word"_a = r.word.to_string(), "point"_a = xyz(r.final_point),
                    "twists_used"_a = r.twists_used);
  });

  m.def("e_kappa_residual", [](const std::array<double, 4>& kappa, double x, double y, double z) {
    return e_kappa_residual({Kappa4(kappa[0], kappa[1], kappa[2], kappa[3]), x, y, z});
  });
  m.def("trace_interval", [](double a, double b) {
    const TraceInterval I = trace_interval(a, b);
    return py::make_tuple(I.lo, I.hi);
  });
  m.def("filtration_member", &filtration_member, py::arg("t"), py::arg("n"));
  m.def("n_of_eps", &n_of_eps);

  py::class_<SurfaceRep>(m, "SurfaceRep")
      .def_static("random", [](int g, int n, std::uint64_t seed) {
        Rng rng(seed);
        return SurfaceRep::random(g, n, rng);
      }, py::arg("genus"), py::arg("boundary"), py::arg("seed"))
      .def_static("identity", &SurfaceRep::identity)
      .def_static("from_json", [](const std::string& text) { return parse_rep(text); })
      .def_static("load", [](const std::string& path) { return load_rep_file(path); })
      .def_property_readonly("genus", [](const SurfaceRep& r) { return r.presentation().genus(); })
      .def_property_readonly("boundary", [](const SurfaceRep& r) { return r.presentation().boundary(); })
      .def_property_readonly("images", &SurfaceRep::images)
      .def_property_readonly("is_exact", &SurfaceRep::is_exact)
      .def("relation_residual", &SurfaceRep::relation_residual)
      .def("boundary_traces", &SurfaceRep::boundary_traces)
      .def("to_json", &rep_to_json);

  m.def("classify", [](const SurfaceRep& rep) {
    const ImageClassification c = classify_rep(rep);
    return py::dict("kind"_a = c.kind, "is_dense"_a = c.is_dense, "order"_a = c.order, "in_spin2"_a = c.in_spin2,
                    "in_pin2"_a = c.in_pin2, "in_T"_a = c.in_T, "in_C"_a = c.in_C, "in_D"_a = c.in_D);
  });
  m.def("find_generic_handle", [](const SurfaceRep& rep) {
    const GenericHandleResult r = find_generic_handle(rep);
    py::list trail;
    for (const auto& c : r.trail) trail.append(py::make_tuple(c.label, c.kind));
    return py::dict("found"_a = r.found, "label"_a = r.handle.label, "k"_a = r.handle.k, "trail"_a = trail);
  });

  m.def("pants_residuals", [](const SurfaceRep& rep) {
    const PantsDecomposition P = PantsDecomposition::standard(rep.presentation().genus(), rep.presentation().boundary());
    return check_pants_inequalities(pants_coords(rep, P), P, rep.boundary_traces());
  });
  m.def("pants_coords", [](const SurfaceRep& rep) {
    return pants_coords(rep, PantsDecomposition::standard(rep.presentation().genus(), rep.presentation().boundary()));
  });

  py::class_<OrbitSample>(m, "OrbitSample")
      .def_property_readonly("size", &OrbitSample::size)
      .def_readonly("dim", &OrbitSample::dim)
      .def_readonly("coordinate_names", &OrbitSample::coordinate_names)
      .def_readonly("words", &OrbitSample::words)
      .def_readonly("max_invariant_drift", &OrbitSample::max_invariant_drift)
      .def_readonly("exact_finite_image", &OrbitSample::exact_finite_image)
      .def("points", [](const OrbitSample& s) {
        py::list out;
        for (std::size_t i = 0; i < s.size(); ++i) {
          py::list row;
          for (std::size_t d = 0; d < s.dim; ++d) row.append(s.coords[i * s.dim + d]);
          out.append(py::tuple(row));
        }
        return out;
      })
      .def("to_csv", [](const OrbitSample& s) {
        std::ostringstream os;
        write_csv(os, s);
        return os.str();
      });

  m.def("orbit_sample",
        [](const SurfaceRep& rep, const std::string& chart, std::size_t budget, std::uint64_t seed, bool bfs,
           unsigned workers) {
          OrbitOptions o;
          o.chart = chart_from_string(chart);
          o.budget = budget;
          o.seed = seed;
          o.strategy = bfs ? Strategy::BreadthFirst : Strategy::RandomWalk;
          o.workers = workers;
          py::gil_scoped_release release;
          return orbit_sample(rep, o);
        },
        py::arg("rep"), py::arg("chart") = "one-holed", py::arg("budget") = 1000, py::arg("seed") = 0,
        py::arg("bfs") = false, py::arg("workers") = 1);

  m.def("density_report",
        [](const OrbitSample& s, const std::vector<double>& lo, const std::vector<double>& hi, double eps) {
          const DensityReport r = density_report(s, Box{lo, hi}, eps);
          return py::dict("coverage"_a = r.coverage, "hit_cells"_a = r.hit_cells, "surface_cells"_a = r.total_cells,
                          "grid_cells"_a = r.grid_cells, "json"_a = to_json_string(r));
        },
        py::arg("sample"), py::arg("lo"), py::arg("hi"), py::arg("eps"));

  m.def("steer_t2",
        [](std::uint64_t seed, double x0, double k0, double eps, std::size_t budget) {
          Rng rng(seed);
          const TwoHoledTorusRep rep = TwoHoledTorusRep::random(rng);
          const SteerT2Result r = steer_t2(rep, x0, k0, eps, budget);
          const TwoHoledTorusRep f = rep.apply_word(r.word);
          return py::dict("success"_a = r.success, "word"_a = r.word.to_string(), "x"_a = f.X.trace(),
                          "k"_a = commutator(f.X, f.Y).trace(), "delta_source"_a = r.delta_source);
        },
        py::arg("seed"), py::arg("x0"), py::arg("k0"), py::arg("eps") = 0.1, py::arg("budget") = 10000000);
}
