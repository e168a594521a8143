// su2twist: command-line front end over the library.
//
//   su2twist classify REP.json
//   su2twist orbit|density|steer|pants-check --config CFG.json [--seed S] [--budget N] [--eps E] [--out PATH]
//   su2twist levelset --config CFG.json
//   su2twist verify-appendix
//
// Exit codes: 0 success, 2 parse error, 3 invariant violation, 4 budget exhausted.

#include "su2twist/appendix.hpp"
#include "su2twist/classify.hpp"
#include "su2twist/orbit_lab.hpp"
#include "su2twist/rep_io.hpp"
#include "su2twist/sphere_four.hpp"
#include "su2twist/torus_family.hpp"
#include "su2twist/torus_one.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace su2twist;
using nlohmann::ordered_json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitBudget = 4;

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  std::optional<double> eps;
  std::string out;
  bool self_check = false;
};

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig c = o.config.empty() ? parse_config("{}") : load_config_file(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.budget) c.budget = *o.budget;
  if (o.eps) {
    if (!(*o.eps > 0.0)) throw ParseError("--eps must be positive");
    c.eps = *o.eps;
  }
  if (!o.out.empty()) c.out = o.out;
  return c;
}

void emit(const ExperimentConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ParseError("cannot write " + c.out);
  f << text;
}

ChartKind chart_of(const ExperimentConfig& c) {
  try {
    return chart_from_string(c.chart);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

OrbitSample run_orbit(const ExperimentConfig& c, const SurfaceRep& rep) {
  OrbitOptions o;
  o.chart = chart_of(c);
  if (c.strategy == "random-walk") {
    o.strategy = Strategy::RandomWalk;
  } else if (c.strategy == "bfs") {
    o.strategy = Strategy::BreadthFirst;
  } else {
    throw ParseError("unknown strategy: " + c.strategy);
  }
  o.budget = c.budget;
  o.seed = c.seed;
  o.workers = c.workers;
  return orbit_sample(rep, o);
}

// Re-reads every emitted point against its chart equation.
void self_check(const OrbitSample& s, const Tolerances& tol) {
  if (s.chart == ChartKind::Surface) {
    return;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    worst = std::max(worst, std::abs(chart_residual(s, s.point(i))));
  }
  if (worst > tol.chart) {
    std::ostringstream m;
    m << "self-check: chart residual " << worst << " exceeds " << tol.chart;
    throw InvariantViolation(m.str());
  }
  std::cerr << "self-check: " << s.size() << " points, max chart residual " << worst << '\n';
}

int cmd_classify(const std::string& path, const Overrides& o) {
  const ExperimentConfig c = resolve(o);
  const SurfaceRep rep = load_rep_file(path, c.tol);
  const ImageClassification cls =
      rep.is_exact() ? classify_subgroup(*rep.exact_images()) : classify_subgroup(rep.images(), c.tol);
  emit(c, to_json_string(cls) + "\n");
  return 0;
}

int cmd_orbit(const Overrides& o) {
  const ExperimentConfig c = resolve(o);
  const OrbitSample s = run_orbit(c, config_rep(c));
  if (o.self_check) self_check(s, c.tol);
  std::ostringstream os;
  write_csv(os, s);
  emit(c, os.str());
  return 0;
}

Box default_region(const OrbitSample& s) {
  return {std::vector<double>(s.dim, -2.0), std::vector<double>(s.dim, 2.0)};
}

int cmd_density(const Overrides& o) {
  const ExperimentConfig c = resolve(o);
  const OrbitSample s = run_orbit(c, config_rep(c));
  if (o.self_check) self_check(s, c.tol);
  Box region = c.region_lo.empty() ? default_region(s) : Box{c.region_lo, c.region_hi};
  emit(c, to_json_string(density_report(s, region, c.eps)) + "\n");
  return 0;
}

ordered_json sphere_levels(const Kappa4& kappa, int levels) {
  ordered_json out = ordered_json::array();
  const TraceInterval xr = kappa.x_range();
  const double lo = std::max(xr.lo, -2.0);
  const double hi = std::min(xr.hi, 2.0);
  for (int i = 0; i < levels; ++i) {
    const double x = lo + (hi - lo) * (i + 0.5) / levels;
    if (std::abs(x) >= 2.0) continue;
    const SphereEllipse e = x_level_ellipse(kappa, x);
    ordered_json l;
    l["x"] = x;
    l["coeff_sum"] = e.coeff_sum;
    l["coeff_diff"] = e.coeff_diff;
    l["offset_sum"] = e.offset_sum;
    l["offset_diff"] = e.offset_diff;
    l["rhs"] = e.rhs;
    l["center"] = e.center;
    l["rotation_angle"] = e.rotation_angle;
    l["degenerate"] = e.degenerate;
    ordered_json pts = ordered_json::array();
    if (!e.degenerate) {
      const double r = std::sqrt(e.rhs);
      for (int t = 0; t < 64; ++t) {
        const double th = 2.0 * std::numbers::pi * t / 64.0;
        const auto yz = e.from_circle(r * std::cos(th), r * std::sin(th));
        pts.push_back({yz[0], yz[1]});
      }
    }
    l["points"] = pts;
    out.push_back(l);
  }
  return out;
}

ordered_json torus_levels(double k, int levels) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < levels; ++i) {
    const double x = -2.0 + 4.0 * (i + 0.5) / levels;
    const LevelEllipse e = level_ellipse_x(k, x);
    ordered_json l;
    l["x"] = x;
    l["coeff_sum"] = e.coeff_sum;
    l["coeff_diff"] = e.coeff_diff;
    l["rhs"] = e.rhs;
    l["rotation_angle"] = e.rotation_angle;
    l["degenerate"] = e.degenerate;
    ordered_json pts = ordered_json::array();
    if (!e.degenerate) {
      const double r = std::sqrt(e.rhs);
      for (int t = 0; t < 64; ++t) {
        const double th = 2.0 * std::numbers::pi * t / 64.0;
        const auto yz = e.from_circle(r * std::cos(th), r * std::sin(th));
        pts.push_back({yz[0], yz[1]});
      }
    }
    l["points"] = pts;
    out.push_back(l);
  }
  return out;
}

int cmd_levelset(const Overrides& o) {
  const ExperimentConfig c = resolve(o);
  if (c.levels < 1) throw ParseError("levelset.levels must be >= 1");
  ordered_json j;
  if (c.kappa.size() == 4) {
    Kappa4 kappa;
    try {
      kappa = Kappa4(c.kappa[0], c.kappa[1], c.kappa[2], c.kappa[3]);
    } catch (const std::invalid_argument& e) {
      throw InvariantViolation(e.what());
    }
    j["surface"] = "four-holed sphere";
    j["kappa"] = c.kappa;
    j["x_range"] = {kappa.x_range().lo, kappa.x_range().hi};
    j["levels"] = sphere_levels(kappa, c.levels);
  } else if (c.k) {
    if (*c.k < -2.0 || *c.k > 2.0) throw InvariantViolation("k must lie in [-2, 2]");
    j["surface"] = "one-holed torus";
    j["k"] = *c.k;
    j["levels"] = torus_levels(*c.k, c.levels);
  } else {
    throw ParseError("levelset needs levelset.kappa (four values) or levelset.k");
  }
  emit(c, j.dump(2) + "\n");
  return 0;
}

int cmd_steer(const Overrides& o) {
  const ExperimentConfig c = resolve(o);
  const SurfaceRep rep = config_rep(c);
  ordered_json j;
  bool ok = false;
  if (c.genus == 1 && c.boundary == 1) {
    if (!c.x0 || !c.y0) throw ParseError("steer on the one-holed torus needs steer.x0 and steer.y0");
    const HandlePair h{rep.images()[0], rep.images()[1]};
    const SteerResult r = steer_t1(traces_of(h), *c.x0, *c.y0, c.eps, c.budget);
    const T1Point m = traces_of(apply_word(h, r.word));
    ok = r.success;
    j["success"] = r.success;
    j["reason"] = r.reason;
    j["word"] = r.word.to_string();
    j["twists_used"] = r.twists_used;
    j["achieved"] = {{"x", m.x}, {"y", m.y}, {"z", m.z}};
  } else if (c.genus == 1 && c.boundary == 2) {
    if (!c.x0 || !c.k0) throw ParseError("steer on the two-holed torus needs steer.x0 and steer.k0");
    const TwoHoledTorusRep t = TwoHoledTorusRep::from_surface(rep);
    SteerT2Result r;
    try {
      r = steer_t2(t, *c.x0, *c.k0, c.eps, c.budget);
    } catch (const NonGenericInput& e) {
      throw InvariantViolation(e.what());
    }
    ok = r.success;
    j["success"] = r.success;
    j["reason"] = r.reason;
    j["word"] = r.word.to_string();
    j["twists_used"] = r.twists_used;
    j["delta"] = r.delta;
    j["delta_source"] = r.delta_source;
    j["coordinate_drift"] = r.coordinate_drift;
    const T2Point& p = r.final_point;
    j["achieved"] = {{"x", p.x}, {"y", p.y}, {"k", p.k}, {"w", p.w}, {"wp", p.wp}};
  } else {
    throw ParseError("steer supports (g, n) = (1, 1) and (1, 2)");
  }
  emit(c, j.dump(2) + "\n");
  return ok ? 0 : kExitBudget;
}

int cmd_verify_appendix(const Overrides& o) {
  const ExperimentConfig c = resolve(o);
  const CaseTable& table = default_case_table();
  std::ostringstream os;
  bool all = true;
  for (const CaseReport& r : verify_all_cases(table)) {
    os << (r.passed ? "PASS " : "FAIL ") << r.id << "  max_residual=" << r.max_residual
       << " components=" << r.real_components;
    for (const auto& m : r.messages) os << "  [" << m << "]";
    os << '\n';
    all = all && r.passed;
  }
  emit(c, os.str());
  return all ? 0 : kExitInvariant;
}

int cmd_pants_check(const Overrides& o) {
  const ExperimentConfig c = resolve(o);
  const SurfaceRep rep = config_rep(c);
  PantsDecomposition P;
  try {
    P = PantsDecomposition::standard(c.genus, c.boundary);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  const std::vector<double> beta = pants_coords(rep, P);
  const std::vector<double> res = check_pants_inequalities(beta, P, rep.boundary_traces());
  ordered_json j;
  ordered_json curves = ordered_json::array();
  for (const auto& w : P.curves) curves.push_back(w.to_string(rep.presentation().names()));
  j["curves"] = curves;
  j["beta"] = beta;
  j["residuals"] = res;
  const double worst = res.empty() ? 0.0 : *std::min_element(res.begin(), res.end());
  j["min_residual"] = worst;
  j["ok"] = worst >= -c.tol.chart;
  emit(c, j.dump(2) + "\n");
  return worst >= -c.tol.chart ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SU(2) character varieties and Dehn twist dynamics"};
  app.require_subcommand(1);
  Overrides o;
  std::string rep_path;

  const auto common = [&](CLI::App* s) {
    s->add_option("--config", o.config, "experiment config (JSON)");
    s->add_option("--seed", o.seed, "64-bit seed");
    s->add_option("--budget", o.budget, "points or twists allowed");
    s->add_option("--eps", o.eps, "target precision");
    s->add_option("--out", o.out, "output path (stdout when absent)");
    s->add_flag("--self-check", o.self_check, "re-validate emitted coordinates");
  };
  auto* classify = app.add_subcommand("classify", "classify the image of a rep file");
  classify->add_option("rep", rep_path, "rep file (JSON)")->required();
  common(classify);
  auto* orbit = app.add_subcommand("orbit", "sample an orbit, CSV output");
  auto* density = app.add_subcommand("density", "orbit density report, JSON output");
  auto* levelset = app.add_subcommand("levelset", "level-set ellipses for plotting");
  auto* steer = app.add_subcommand("steer", "steer trace coordinates to a target");
  auto* verify = app.add_subcommand("verify-appendix", "check the shipped appendix cases");
  auto* pants = app.add_subcommand("pants-check", "pants coordinates and inequalities");
  for (auto* s : {orbit, density, levelset, steer, verify, pants}) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (*classify) return cmd_classify(rep_path, o);
    if (*orbit) return cmd_orbit(o);
    if (*density) return cmd_density(o);
    if (*levelset) return cmd_levelset(o);
    if (*steer) return cmd_steer(o);
    if (*verify) return cmd_verify_appendix(o);
    if (*pants) return cmd_pants_check(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return 0;
}
