#include "su2twist/rep_io.hpp"

#include "su2twist/appendix.hpp"
#include "su2twist/exact_quaternion.hpp"
#include "su2twist/qf_parse.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace su2twist {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON: ") + e.what());
  }
}

struct Entry {
  std::optional<QFElement> exact;
  double value = 0.0;
};

Entry read_entry(const json& v) {
  if (v.is_number()) {
    return {std::nullopt, v.get<double>()};
  }
  if (v.is_string()) {
    try {
      const ParsedValue p = parse_value(v.get<std::string>());
      return {p.exact, p.to_double()};
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("quaternion entry: ") + e.what());
    }
  }
  throw ParseError("quaternion entries must be numbers or strings");
}

SurfaceRep appendix_rep(const std::string& name) {
  const auto& groups = default_case_table().groups;
  const auto it = groups.find(name);
  if (it == groups.end()) {
    throw ParseError("unknown appendix group: " + name);
  }
  const ExactQuaternion& X = it->second.ai;
  const ExactQuaternion& Y = it->second.ag;
  const ExactQuaternion C = (X * Y * X.inverse() * Y.inverse()).inverse();
  return SurfaceRep(SurfacePresentation(1, 1), std::vector<ExactQuaternion>{X, Y, C});
}

SurfaceRep rep_from_json(const json& j, const Tolerances& tol) {
  if (!j.is_object()) {
    throw ParseError("rep must be a JSON object");
  }
  if (j.contains("appendix")) {
    return appendix_rep(j.at("appendix").get<std::string>());
  }
  if (!j.contains("genus") || !j.contains("boundary")) {
    throw ParseError("rep needs \"genus\" and \"boundary\"");
  }
  const int g = j.at("genus").get<int>();
  const int n = j.at("boundary").get<int>();
  if (g < 0 || n < 0 || g + n == 0) {
    throw ParseError("rep needs genus >= 0, boundary >= 0, not both zero");
  }
  if (j.value("identity", false)) {
    return SurfaceRep::identity(g, n);
  }
  if (j.contains("random")) {
    Rng rng(j.at("random").value("seed", std::uint64_t{0}));
    try {
      return SurfaceRep::random(g, n, rng);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  if (!j.contains("images") || !j.at("images").is_array()) {
    throw ParseError("rep needs an \"images\" array");
  }
  const SurfacePresentation pres(g, n);
  const bool solve_last = j.value("solve_last", false);
  const std::size_t need = static_cast<std::size_t>(pres.generator_count()) - (solve_last ? 1 : 0);
  const json& imgs = j.at("images");
  if (imgs.size() != need) {
    throw ParseError("rep needs " + std::to_string(need) + " images, got " + std::to_string(imgs.size()));
  }
  std::vector<std::array<Entry, 4>> rows;
  bool all_exact = true;
  for (const auto& q : imgs) {
    if (!q.is_array() || q.size() != 4) {
      throw ParseError("each image is [w, x, y, z]");
    }
    std::array<Entry, 4> row;
    for (std::size_t c = 0; c < 4; ++c) {
      row[c] = read_entry(q[c]);
      all_exact = all_exact && row[c].exact.has_value();
    }
    rows.push_back(std::move(row));
  }

  if (all_exact) {
    std::vector<ExactQuaternion> ex;
    for (const auto& r : rows) {
      ExactQuaternion q{*r[0].exact, *r[1].exact, *r[2].exact, *r[3].exact};
      if (!q.is_unit()) {
        throw InvariantViolation("exact image is not a unit quaternion");
      }
      ex.push_back(std::move(q));
    }
    if (solve_last) {
      ex.push_back(ExactQuaternion::identity());
      ex.back() = evaluate_word(ex, pres.relation()).inverse();
    }
    if (!(evaluate_word(ex, pres.relation()) == ExactQuaternion::identity())) {
      throw InvariantViolation("surface relation violated (exact)");
    }
    return SurfaceRep(pres, std::move(ex));
  }

  std::vector<UnitQuaternion> fl;
  for (const auto& r : rows) {
    const UnitQuaternion q{r[0].value, r[1].value, r[2].value, r[3].value};
    if (std::abs(q.norm_sq() - 1.0) > tol.chart) {
      throw InvariantViolation("image is not a unit quaternion");
    }
    fl.push_back(q.normalized());
  }
  if (solve_last) {
    fl.push_back(UnitQuaternion::identity());
    fl.back() = evaluate_word(fl, pres.relation()).inverse().normalized();
  }
  const double res = distance(evaluate_word(fl, pres.relation()), UnitQuaternion::identity());
  if (res > tol.relation) {
    throw InvariantViolation("surface relation violated: residual " + std::to_string(res));
  }
  return SurfaceRep(pres, std::move(fl), tol);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SurfaceRep parse_rep(const std::string& json_text, const Tolerances& tol) {
  return rep_from_json(parse_json(json_text), tol);
}

SurfaceRep load_rep_file(const std::string& path, const Tolerances& tol) { return parse_rep(read_file(path), tol); }

std::string rep_to_json(const SurfaceRep& rep) {
  std::ostringstream os;
  os << "{\"genus\": " << rep.presentation().genus() << ", \"boundary\": " << rep.presentation().boundary()
     << ", \"images\": [";
  for (std::size_t i = 0; i < rep.images().size(); ++i) {
    os << (i == 0 ? "" : ", ") << '[';
    if (rep.is_exact()) {
      const ExactQuaternion& q = (*rep.exact_images())[i];
      os << json(q.w.to_string()).dump() << ", " << json(q.x.to_string()).dump() << ", "
         << json(q.y.to_string()).dump() << ", " << json(q.z.to_string()).dump();
    } else {
      const UnitQuaternion& q = rep.images()[i];
      os << fmt17(q.w) << ", " << fmt17(q.x) << ", " << fmt17(q.y) << ", " << fmt17(q.z);
    }
    os << ']';
  }
  os << "]}\n";
  return os.str();
}

ExperimentConfig parse_config(const std::string& json_text) {
  const json j = parse_json(json_text);
  if (!j.is_object()) {
    throw ParseError("config must be a JSON object");
  }
  ExperimentConfig c;
  try {
    if (j.contains("surface")) {
      c.genus = j["surface"].value("genus", c.genus);
      c.boundary = j["surface"].value("boundary", c.boundary);
    }
    if (j.contains("rep")) {
      c.rep_json = j["rep"].dump();
    }
    c.rep_path = j.value("rep_file", std::string{});
    if (j.contains("boundary_traces")) {
      c.boundary_traces = j["boundary_traces"].get<std::vector<double>>();
    }
    c.chart = j.value("chart", c.chart);
    c.strategy = j.value("strategy", c.strategy);
    c.seed = j.value("seed", c.seed);
    c.budget = j.value("budget", c.budget);
    c.eps = j.value("eps", c.eps);
    c.workers = j.value("workers", c.workers);
    if (j.contains("region")) {
      c.region_lo = j["region"].at("lo").get<std::vector<double>>();
      c.region_hi = j["region"].at("hi").get<std::vector<double>>();
    }
    if (j.contains("tolerances")) {
      const json& t = j["tolerances"];
      c.tol.norm = t.value("norm", c.tol.norm);
      c.tol.identity = t.value("identity", c.tol.identity);
      c.tol.relation = t.value("relation", c.tol.relation);
      c.tol.cluster = t.value("cluster", c.tol.cluster);
      c.tol.criterion = t.value("criterion", c.tol.criterion);
      c.tol.chart = t.value("chart", c.tol.chart);
    }
    if (j.contains("output")) {
      c.out = j["output"].value("path", std::string{});
    }
    if (j.contains("steer")) {
      const json& s = j["steer"];
      if (s.contains("x0")) c.x0 = s["x0"].get<double>();
      if (s.contains("y0")) c.y0 = s["y0"].get<double>();
      if (s.contains("k0")) c.k0 = s["k0"].get<double>();
    }
    if (j.contains("levelset")) {
      const json& l = j["levelset"];
      if (l.contains("kappa")) c.kappa = l["kappa"].get<std::vector<double>>();
      if (l.contains("k")) c.k = l["k"].get<double>();
      c.levels = l.value("levels", c.levels);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (c.genus < 0 || c.boundary < 0) {
    throw ParseError("config: genus and boundary must be >= 0");
  }
  if (c.boundary == 0) {
    throw ParseError("config: closed surfaces are not supported");
  }
  for (double t : c.boundary_traces) {
    if (t < -2.0 || t > 2.0) {
      throw ParseError("config: boundary traces must lie in [-2, 2]");
    }
  }
  if (!(c.eps > 0.0)) {
    throw ParseError("config: eps must be positive");
  }
  return c;
}

ExperimentConfig load_config_file(const std::string& path) { return parse_config(read_file(path)); }

SurfaceRep config_rep(const ExperimentConfig& cfg) {
  SurfaceRep rep = [&] {
    if (!cfg.rep_json.empty()) {
      return parse_rep(cfg.rep_json, cfg.tol);
    }
    if (!cfg.rep_path.empty()) {
      return load_rep_file(cfg.rep_path, cfg.tol);
    }
    Rng rng(cfg.seed);
    return SurfaceRep::random(cfg.genus, cfg.boundary, rng);
  }();
  if (rep.presentation().genus() != cfg.genus || rep.presentation().boundary() != cfg.boundary) {
    throw InvariantViolation("rep surface does not match the configured (g, n)");
  }
  if (!cfg.boundary_traces.empty()) {
    const auto bt = rep.boundary_traces();
    if (bt.size() != cfg.boundary_traces.size()) {
      throw InvariantViolation("boundary_traces has the wrong length");
    }
    for (std::size_t i = 0; i < bt.size(); ++i) {
      if (std::abs(bt[i] - cfg.boundary_traces[i]) > cfg.tol.relation) {
        throw InvariantViolation("boundary trace " + std::to_string(i + 1) + " is " + fmt17(bt[i]) +
                                 ", config asks for " + fmt17(cfg.boundary_traces[i]));
      }
    }
  }
  return rep;
}

}  // namespace su2twist
