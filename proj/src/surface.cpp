#include "su2twist/surface.hpp"

#include <cmath>
#include <stdexcept>

namespace su2twist {

SurfacePresentation::SurfacePresentation(int genus, int boundary) : g_(genus), n_(boundary) {
  if (g_ < 0 || n_ < 0 || (g_ == 0 && n_ == 0)) {
    throw std::invalid_argument("surface needs genus >= 0, boundary >= 0, not both zero");
  }
  for (int i = 0; i < generator_count(); ++i) {
    names_.push_back("A" + std::to_string(i + 1));
  }
  FreeWord rel;
  for (int i = 0; i < g_; ++i) {
    rel = rel * commutator_word(FreeWord::generator(i), FreeWord::generator(i + g_));
  }
  for (int j = 0; j < n_; ++j) {
    rel = rel * FreeWord::generator(2 * g_ + j);
  }
  relation_ = rel;
}

UnitQuaternion evaluate_word(const std::vector<UnitQuaternion>& images, const FreeWord& word) {
  UnitQuaternion acc = UnitQuaternion::identity();
  int count = 0;
  for (const auto& l : word.letters()) {
    if (l.gen < 0 || l.gen >= static_cast<int>(images.size())) {
      throw std::out_of_range("word letter out of range: generator " + std::to_string(l.gen + 1));
    }
    const UnitQuaternion& g = images[static_cast<std::size_t>(l.gen)];
    acc = acc * (l.exp > 0 ? g : g.inverse());
    if (++count % 64 == 0) {
      acc = acc.normalized();
    }
  }
  return acc;
}

ExactQuaternion evaluate_word(const std::vector<ExactQuaternion>& images, const FreeWord& word) {
  ExactQuaternion acc = ExactQuaternion::identity();
  for (const auto& l : word.letters()) {
    if (l.gen < 0 || l.gen >= static_cast<int>(images.size())) {
      throw std::out_of_range("word letter out of range: generator " + std::to_string(l.gen + 1));
    }
    const ExactQuaternion& g = images[static_cast<std::size_t>(l.gen)];
    acc = acc * (l.exp > 0 ? g : g.inverse());
  }
  return acc;
}

SurfaceRep::SurfaceRep(SurfacePresentation pres, std::vector<UnitQuaternion> images, const Tolerances& tol)
    : pres_(std::move(pres)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != pres_.generator_count()) {
    throw std::invalid_argument("representation needs one image per generator");
  }
  for (const auto& q : images_) {
    if (std::abs(q.norm_sq() - 1.0) > tol.chart) {
      throw std::invalid_argument("generator image is not a unit quaternion");
    }
  }
  for (auto& q : images_) {
    q = q.normalized();
  }
  if (relation_residual() > tol.relation) {
    throw std::invalid_argument("surface relation violated: residual " + std::to_string(relation_residual()));
  }
}

SurfaceRep::SurfaceRep(SurfacePresentation pres, std::vector<ExactQuaternion> images) : pres_(std::move(pres)) {
  if (static_cast<int>(images.size()) != pres_.generator_count()) {
    throw std::invalid_argument("representation needs one image per generator");
  }
  for (const auto& q : images) {
    if (!q.is_unit()) {
      throw std::invalid_argument("exact generator image is not a unit quaternion");
    }
    images_.push_back(q.to_float());
  }
  if (!(evaluate_word(images, pres_.relation()) == ExactQuaternion::identity())) {
    throw std::invalid_argument("surface relation violated (exact)");
  }
  exact_ = std::move(images);
}

SurfaceRep SurfaceRep::random(int genus, int boundary, Rng& rng) {
  SurfacePresentation pres(genus, boundary);
  const int m = pres.generator_count();
  std::vector<UnitQuaternion> imgs(static_cast<std::size_t>(m));
  for (int i = 0; i + 1 < m; ++i) {
    imgs[static_cast<std::size_t>(i)] = random_su2(rng);
  }
  if (boundary == 0) {
    throw std::invalid_argument("random representation needs a boundary component");
  }
  // Relation is W * A_last = 1 with W the product of everything before the last letter.
  imgs[static_cast<std::size_t>(m - 1)] = UnitQuaternion::identity();
  const UnitQuaternion w = evaluate_word(imgs, pres.relation());
  imgs[static_cast<std::size_t>(m - 1)] = w.inverse().normalized();
  return SurfaceRep(std::move(pres), std::move(imgs));
}

SurfaceRep SurfaceRep::identity(int genus, int boundary) {
  SurfacePresentation pres(genus, boundary);
  std::vector<UnitQuaternion> imgs(static_cast<std::size_t>(pres.generator_count()), UnitQuaternion::identity());
  return SurfaceRep(std::move(pres), std::move(imgs));
}

UnitQuaternion SurfaceRep::evaluate(const FreeWord& word) const { return evaluate_word(images_, word); }

double SurfaceRep::relation_residual() const {
  return distance(evaluate(pres_.relation()), UnitQuaternion::identity());
}

std::vector<double> SurfaceRep::boundary_traces() const {
  std::vector<double> out;
  for (int j = 0; j < pres_.boundary(); ++j) {
    out.push_back(images_[static_cast<std::size_t>(pres_.boundary_generator(j))].trace());
  }
  return out;
}

SurfaceRep SurfaceRep::conjugated(const UnitQuaternion& g) const {
  std::vector<UnitQuaternion> imgs;
  imgs.reserve(images_.size());
  for (const auto& q : images_) {
    imgs.push_back(conjugate_by(g, q));
  }
  return SurfaceRep(pres_, std::move(imgs));
}

}  // namespace su2twist
