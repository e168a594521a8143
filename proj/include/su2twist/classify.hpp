#pragma once

#include "su2twist/exact_quaternion.hpp"
#include "su2twist/quaternion.hpp"
#include "su2twist/tolerance.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace su2twist {

/// Where a subgroup of SU(2) sits, up to conjugacy.
struct ImageClassification {
  bool central = false;
  bool in_spin2 = false;
  bool in_pin2 = false;
  bool in_T = false;
  bool in_C = false;
  bool in_D = false;
  bool is_dense = false;
  /// "central", "cyclic", "binary_dihedral", "pin2_infinite", "spin2_infinite", "T", "C", "D" or "dense".
  std::string kind;
  std::size_t order = 0;  // 0 when the closure is infinite
  std::optional<Vec3> axis;
  std::string witness;
};

struct FiniteClosure {
  std::vector<UnitQuaternion> elements;  // sorted by coefficient tuple
  std::vector<UnitQuaternion> generators;
  bool closed = false;
  std::size_t cap = 240;
};

struct ExactClosure {
  std::vector<ExactQuaternion> elements;  // sorted
  std::vector<ExactQuaternion> generators;
  bool closed = false;
  std::size_t cap = 240;
};

/// Thrown when two float elements are closer than 10x the cluster tolerance but were not merged.
class ClusteringAmbiguity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool spin2_criterion_3holed(double a, double b, double c, const Tolerances& tol = default_tolerances);
bool pin2_criterion_3holed(double a, double b, double ab, const Tolerances& tol = default_tolerances);

FiniteClosure finite_closure(const std::vector<UnitQuaternion>& generators, std::size_t cap = 240,
                             const Tolerances& tol = default_tolerances);
ExactClosure finite_closure(const std::vector<ExactQuaternion>& generators, std::size_t cap = 240);

/// True when u*v lies in the set for every pair (exact).
bool is_closed_under_product(const std::vector<ExactQuaternion>& elements);

/// Axis L such that each generator rotates about L or is a half-turn about an axis orthogonal to L.
std::optional<Vec3> pin2_geometric_test(const std::vector<UnitQuaternion>& generators,
                                        const Tolerances& tol = default_tolerances);

ImageClassification classify_subgroup(const std::vector<UnitQuaternion>& generators,
                                      const Tolerances& tol = default_tolerances);
ImageClassification classify_subgroup(const std::vector<ExactQuaternion>& generators);

/// The special set {0, 1, (1+-sqrt5)/2} of one-holed torus boundary traces.
const std::vector<double>& special_k_values();
bool is_special_k(double k, const Tolerances& tol = default_tolerances);

double one_holed_k(double x, double y, double z);
/// Non-abelian Pin(2) characters of the one-holed torus: two of the three traces vanish.
bool on_one_holed_pin2_locus(double x, double y, double z, const Tolerances& tol = default_tolerances);
bool one_holed_genericity_shortcut(double x, double y, double z, const Tolerances& tol = default_tolerances);

std::string to_json_string(const ImageClassification& c);

}  // namespace su2twist
