#pragma once

#include "su2twist/classify.hpp"
#include "su2twist/surface.hpp"
#include "su2twist/tolerance.hpp"
#include "su2twist/word.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace su2twist {

/// Curves B_1..B_N as words, then pants as index triples into [curves..., boundary loops...].
struct PantsDecomposition {
  int genus = 0;
  int boundary = 0;
  std::vector<FreeWord> curves;
  std::vector<std::array<int, 3>> pants;
  /// Sign c of the cubic term per pants (+1 except on an exceptional sphere).
  std::vector<int> signs;

  /// Handle curves A_i, separating curves [A_i, A_{g+i}] and a chain through the remaining sphere.
  static PantsDecomposition standard(int genus, int boundary);
  std::size_t curve_count() const { return curves.size(); }
};

std::vector<double> pants_coords(const SurfaceRep& rep, const PantsDecomposition& P);

/// 4 - (b_i^2 + b_j^2 + b_k^2 - c b_i b_j b_k) per pants; boundary_traces fills boundary slots.
std::vector<double> check_pants_inequalities(const std::vector<double>& beta, const PantsDecomposition& P,
                                             const std::vector<double>& boundary_traces);

std::vector<double> fibre_rotation_angles(const std::vector<double>& beta);

struct HandleCandidate {
  FreeWord first;
  FreeWord second;
  std::string label;
  std::string kind;  // classification kind, "shortcut" when the trace test decided
  bool dense = false;
  double k = 0.0;
};

struct GenericHandleResult {
  bool found = false;
  HandleCandidate handle;
  std::vector<HandleCandidate> trail;  // rejected candidates, in search order
};

/// Searches (A_i, A_{g+i}), then (A_i, A_{g+i}A_j), (A_iA_j, A_{g+i}), (A_i, A_jA_{g+i}), (A_jA_i, A_{g+i}),
/// then (A_i, A_{g+i}A_iA_j). Dense candidates with k outside the special set win over the rest.
GenericHandleResult find_generic_handle(const SurfaceRep& rep, const Tolerances& tol = default_tolerances);

enum class ChartKind { OneHoled, FourHoled, TwoHoled, Surface };
enum class Strategy { RandomWalk, BreadthFirst };

std::string to_string(ChartKind c);
ChartKind chart_from_string(const std::string& s);

/// Twist generators available on a chart; inverses are negative powers.
std::vector<std::string> chart_twists(ChartKind chart, int genus = 0, int boundary = 0);
std::vector<std::string> chart_coordinate_names(ChartKind chart, int genus = 0, int boundary = 0);

struct OrbitSample {
  ChartKind chart = ChartKind::OneHoled;
  std::vector<std::string> coordinate_names;
  std::size_t dim = 0;
  std::vector<double> coords;  // row-major, dim per point
  std::vector<std::string> words;
  /// True for breadth-first samples (word from the start); random walks store the single step taken.
  bool words_from_start = false;
  /// Invariants of the chart: k, kappa, (a, b) or boundary traces.
  std::vector<double> parameters;
  double max_invariant_drift = 0.0;
  /// Exact rep with a finite image: images were kept on the group after every twist.
  bool exact_finite_image = false;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  const double* point(std::size_t i) const { return coords.data() + i * dim; }
};

/// Defining polynomial of the chart at a point (0 on the variety); Surface charts have none.
double chart_residual(const OrbitSample& s, const double* point);

struct OrbitOptions {
  ChartKind chart = ChartKind::OneHoled;
  std::vector<std::string> twists;  // empty: all chart_twists
  Strategy strategy = Strategy::RandomWalk;
  std::size_t budget = 1;  // points recorded, the start included
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Throws std::invalid_argument for budget 0 or a chart that does not match the surface.
OrbitSample orbit_sample(const SurfaceRep& rep, const OrbitOptions& opts);

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

struct DensityReport {
  Box region;
  double eps = 0.0;
  double pitch = 0.0;
  std::size_t hit_cells = 0;
  std::size_t total_cells = 0;  // cells meeting the variety
  std::size_t grid_cells = 0;   // all cells of the region
  double coverage = 0.0;
  std::size_t sample_count = 0;
  std::size_t points_outside_surface_cells = 0;
  double mean_word_length = 0.0;
  std::size_t max_word_length = 0;  // over the word column (single steps for random walks)
};

/// Grids the region at pitch eps; a cell meets the variety when the chart residual changes sign
/// among its corners and centre. Throws std::invalid_argument for an empty region or eps <= 0.
DensityReport density_report(const OrbitSample& sample, const Box& region, double eps);

std::string to_json_string(const DensityReport& r);
void write_csv(std::ostream& os, const OrbitSample& s);

}  // namespace su2twist
