#pragma once

#include "su2twist/exact_quaternion.hpp"
#include "su2twist/quaternion.hpp"
#include "su2twist/tolerance.hpp"
#include "su2twist/word.hpp"

#include <optional>
#include <string>
#include <vector>

namespace su2twist {

/// pi_1 of a genus-g surface with n boundary circles:
/// generators A1..A_{2g+n}, relation [A1,A_{g+1}]...[A_g,A_{2g}] A_{2g+1}...A_{2g+n} = 1.
class SurfacePresentation {
 public:
  SurfacePresentation(int genus, int boundary);

  int genus() const { return g_; }
  int boundary() const { return n_; }
  int generator_count() const { return 2 * g_ + n_; }
  const std::vector<std::string>& names() const { return names_; }
  const FreeWord& relation() const { return relation_; }

  /// Generator index of the j-th boundary curve (0-based j).
  int boundary_generator(int j) const { return 2 * g_ + j; }

 private:
  int g_;
  int n_;
  std::vector<std::string> names_;
  FreeWord relation_;
};

/// Product of quaternions along a word, renormalizing every 64 factors.
UnitQuaternion evaluate_word(const std::vector<UnitQuaternion>& images, const FreeWord& word);
ExactQuaternion evaluate_word(const std::vector<ExactQuaternion>& images, const FreeWord& word);

class SurfaceRep {
 public:
  /// Throws std::invalid_argument on wrong image count or a relation residual above tol.relation.
  SurfaceRep(SurfacePresentation pres, std::vector<UnitQuaternion> images,
             const Tolerances& tol = default_tolerances);
  /// Exact images; the relation must hold identically.
  SurfaceRep(SurfacePresentation pres, std::vector<ExactQuaternion> images);

  /// Haar-random images for all generators but the last, which is solved from the relation.
  static SurfaceRep random(int genus, int boundary, Rng& rng);
  static SurfaceRep identity(int genus, int boundary);

  const SurfacePresentation& presentation() const { return pres_; }
  const std::vector<UnitQuaternion>& images() const { return images_; }
  const std::optional<std::vector<ExactQuaternion>>& exact_images() const { return exact_; }
  bool is_exact() const { return exact_.has_value(); }

  UnitQuaternion evaluate(const FreeWord& word) const;
  double trace_of(const FreeWord& word) const { return evaluate(word).trace(); }
  /// Max-abs distance of the relation word's value from the identity.
  double relation_residual() const;
  std::vector<double> boundary_traces() const;

  SurfaceRep conjugated(const UnitQuaternion& g) const;

 private:
  SurfacePresentation pres_;
  std::vector<UnitQuaternion> images_;
  std::optional<std::vector<ExactQuaternion>> exact_;
};

}  // namespace su2twist
