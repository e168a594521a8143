#pragma once

#include "su2twist/surface.hpp"
#include "su2twist/tolerance.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace su2twist {

/// Malformed rep or config text.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input that parses but breaks an invariant (relation, unit norm, boundary data).
class InvariantViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Rep files are JSON:
///   {"genus": 1, "boundary": 1, "images": [[w, x, y, z], ...]}
/// Entries given as strings ("1/2", "sqrt5/4", "(1+sqrt5)/4") are read exactly; JSON numbers are
/// floats. A rep with every entry exact uses exact arithmetic. "solve_last": true drops the last
/// image and solves it from the relation. Alternatives to "images": "random": {"seed": s},
/// "identity": true, or "appendix": "<group name>" for the one-holed torus rep on an appendix pair.
SurfaceRep parse_rep(const std::string& json_text, const Tolerances& tol = default_tolerances);
SurfaceRep load_rep_file(const std::string& path, const Tolerances& tol = default_tolerances);

/// Writes exact images as strings when present, floats with 17 significant digits otherwise.
std::string rep_to_json(const SurfaceRep& rep);

struct ExperimentConfig {
  int genus = 1;
  int boundary = 1;
  /// Source of the rep: a nested rep object, a path, or a seeded random rep.
  std::string rep_json;
  std::string rep_path;
  std::vector<double> boundary_traces;  // targets checked against the rep, empty when unset
  std::string chart = "one-holed";
  std::string strategy = "random-walk";
  std::uint64_t seed = 0;
  std::size_t budget = 1000;
  double eps = 0.1;
  unsigned workers = 1;
  std::vector<double> region_lo;
  std::vector<double> region_hi;
  Tolerances tol = default_tolerances;
  std::string out;
  // steer targets
  std::optional<double> x0, y0, k0;
  // levelset
  std::vector<double> kappa;
  std::optional<double> k;
  int levels = 9;
};

/// Nested JSON: {"surface": {"genus", "boundary"}, "rep": {...} | "rep_file": path,
/// "boundary_traces": [...], "chart", "strategy", "seed", "budget", "eps", "workers",
/// "region": {"lo", "hi"}, "tolerances": {...}, "output": {"path"},
/// "steer": {"x0", "y0", "k0"}, "levelset": {"kappa": [a, b, c, d] | "k", "levels"}}.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

/// The rep named by the config: its rep object, its rep file, or Haar-random from the seed.
/// Checks (g, n) and boundary_traces; throws InvariantViolation on mismatch.
SurfaceRep config_rep(const ExperimentConfig& cfg);

}  // namespace su2twist
