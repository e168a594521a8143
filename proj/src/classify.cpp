#include "su2twist/classify.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace su2twist {

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool lex_less(const UnitQuaternion& a, const UnitQuaternion& b) { return a.components() < b.components(); }

// Index of the element within tol of q, or -1. Throws when something sits just outside tol.
int find_cluster(const std::vector<UnitQuaternion>& elems, const UnitQuaternion& q, double tol) {
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const double d = distance(elems[i], q);
    if (d <= tol) {
      return static_cast<int>(i);
    }
    if (d <= 10.0 * tol) {
      throw ClusteringAmbiguity("float closure: elements at distance " + std::to_string(d) +
                                " cannot be clustered safely; use exact arithmetic");
    }
  }
  return -1;
}

bool is_central(const UnitQuaternion& q, double tol) { return norm(q.vector_part()) <= tol; }

Vec3 unit(const Vec3& v) {
  const double n = norm(v);
  return {v[0] / n, v[1] / n, v[2] / n};
}

struct Fingerprint {
  std::size_t order;
  std::map<double, int> traces;  // trace value -> multiplicity
};

const Fingerprint& fingerprint_T() {
  static const Fingerprint f{24, {{2.0, 1}, {-2.0, 1}, {0.0, 6}, {1.0, 8}, {-1.0, 8}}};
  return f;
}

const Fingerprint& fingerprint_C() {
  static const Fingerprint f{
      48, {{2.0, 1}, {-2.0, 1}, {0.0, 18}, {1.0, 8}, {-1.0, 8}, {std::sqrt(2.0), 6}, {-std::sqrt(2.0), 6}}};
  return f;
}

const Fingerprint& fingerprint_D() {
  const double r2 = (std::sqrt(5.0) + 1.0) / 2.0;
  const double s2 = (std::sqrt(5.0) - 1.0) / 2.0;
  static const Fingerprint f{120,
                             {{2.0, 1}, {-2.0, 1}, {0.0, 30}, {1.0, 20}, {-1.0, 20}, {r2, 12}, {-r2, 12}, {s2, 12}, {-s2, 12}}};
  return f;
}

bool matches(const Fingerprint& f, const std::vector<UnitQuaternion>& elems) {
  if (elems.size() != f.order) {
    return false;
  }
  std::map<double, int> counts;
  for (const auto& q : elems) {
    bool hit = false;
    for (const auto& [t, m] : f.traces) {
      if (near(q.trace(), t, 1e-6)) {
        ++counts[t];
        hit = true;
        break;
      }
    }
    if (!hit) {
      return false;
    }
  }
  return counts == f.traces;
}

bool all_commute(const std::vector<UnitQuaternion>& gens, double tol) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (distance(gens[i] * gens[j], gens[j] * gens[i]) > tol) {
        return false;
      }
    }
  }
  return true;
}

bool in_list(std::size_t v, std::initializer_list<std::size_t> xs) { return std::find(xs.begin(), xs.end(), v) != xs.end(); }

void set_cyclic(ImageClassification& c, std::size_t n) {
  c.kind = n <= 2 ? "central" : "cyclic";
  c.central = n <= 2;
  c.in_spin2 = c.in_pin2 = true;
  c.in_T = in_list(n, {1, 2, 3, 4, 6});
  c.in_C = in_list(n, {1, 2, 3, 4, 6, 8});
  c.in_D = in_list(n, {1, 2, 3, 4, 5, 6, 10});
}

void set_dicyclic(ImageClassification& c, std::size_t n) {
  const std::size_t m = n / 4;
  c.kind = "binary_dihedral";
  c.in_pin2 = true;
  c.in_T = m == 2;
  c.in_C = in_list(m, {2, 3, 4});
  c.in_D = in_list(m, {2, 3, 5});
}

ImageClassification classify_finite(const std::vector<UnitQuaternion>& gens, const std::vector<UnitQuaternion>& elems,
                                    const Tolerances& tol) {
  ImageClassification c;
  c.order = elems.size();
  c.witness = "finite closure of order " + std::to_string(c.order);
  const double ctol = tol.cluster * 10.0;
  if (all_commute(elems, ctol)) {
    set_cyclic(c, c.order);
    c.axis = pin2_geometric_test(gens, tol);
    return c;
  }
  if (auto axis = pin2_geometric_test(gens, tol)) {
    set_dicyclic(c, c.order);
    c.axis = axis;
    return c;
  }
  if (matches(fingerprint_T(), elems)) {
    c.kind = "T";
    c.in_T = c.in_C = c.in_D = true;
  } else if (matches(fingerprint_C(), elems)) {
    c.kind = "C";
    c.in_C = true;
  } else if (matches(fingerprint_D(), elems)) {
    c.kind = "D";
    c.in_D = true;
  } else {
    throw std::logic_error("finite subgroup of order " + std::to_string(c.order) + " matches no known fingerprint");
  }
  return c;
}

}  // namespace

bool spin2_criterion_3holed(double a, double b, double c, const Tolerances& tol) {
  return std::abs(a * a + b * b + c * c - a * b * c - 4.0) <= tol.criterion;
}

bool pin2_criterion_3holed(double a, double b, double ab, const Tolerances& tol) {
  if (spin2_criterion_3holed(a, b, ab, tol)) {
    return false;
  }
  const int zeros = (std::abs(a) <= tol.criterion) + (std::abs(b) <= tol.criterion) + (std::abs(ab) <= tol.criterion);
  return zeros >= 2;
}

FiniteClosure finite_closure(const std::vector<UnitQuaternion>& generators, std::size_t cap, const Tolerances& tol) {
  FiniteClosure out;
  out.generators = generators;
  out.cap = cap;
  std::vector<UnitQuaternion>& elems = out.elements;
  elems.push_back(UnitQuaternion::identity());
  std::deque<std::size_t> queue{0};
  out.closed = true;
  while (!queue.empty() && out.closed) {
    const UnitQuaternion cur = elems[queue.front()];
    queue.pop_front();
    for (const auto& g : generators) {
      const UnitQuaternion p = (cur * g).normalized();
      if (find_cluster(elems, p, tol.cluster) >= 0) {
        continue;
      }
      if (elems.size() >= cap) {
        out.closed = false;
        break;
      }
      elems.push_back(p);
      queue.push_back(elems.size() - 1);
    }
  }
  std::sort(elems.begin(), elems.end(), lex_less);
  return out;
}

ExactClosure finite_closure(const std::vector<ExactQuaternion>& generators, std::size_t cap) {
  ExactClosure out;
  out.generators = generators;
  out.cap = cap;
  std::set<ExactQuaternion> seen{ExactQuaternion::identity()};
  std::deque<ExactQuaternion> queue{ExactQuaternion::identity()};
  out.closed = true;
  while (!queue.empty() && out.closed) {
    const ExactQuaternion cur = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      ExactQuaternion p = cur * g;
      if (seen.count(p) != 0) {
        continue;
      }
      if (seen.size() >= cap) {
        out.closed = false;
        break;
      }
      seen.insert(p);
      queue.push_back(std::move(p));
    }
  }
  out.elements.assign(seen.begin(), seen.end());
  return out;
}

bool is_closed_under_product(const std::vector<ExactQuaternion>& elements) {
  const std::set<ExactQuaternion> s(elements.begin(), elements.end());
  for (const auto& u : elements) {
    if (s.count(u.inverse()) == 0) {
      return false;
    }
    for (const auto& v : elements) {
      if (s.count(u * v) == 0) {
        return false;
      }
    }
  }
  return true;
}

std::optional<Vec3> pin2_geometric_test(const std::vector<UnitQuaternion>& generators, const Tolerances& tol) {
  const double t = tol.criterion;
  std::vector<Vec3> axes;
  std::vector<const UnitQuaternion*> moving;
  for (const auto& g : generators) {
    if (!is_central(g, t)) {
      axes.push_back(unit(g.vector_part()));
      moving.push_back(&g);
    }
  }
  if (axes.empty()) {
    return Vec3{0.0, 0.0, 1.0};
  }
  std::vector<Vec3> candidates = axes;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    for (std::size_t j = i + 1; j < axes.size(); ++j) {
      const Vec3 c = cross(axes[i], axes[j]);
      if (norm(c) > 1e-6) {
        candidates.push_back(unit(c));
      }
    }
  }
  for (const auto& L : candidates) {
    bool ok = true;
    for (std::size_t i = 0; i < moving.size() && ok; ++i) {
      const bool about = norm(cross(axes[i], L)) <= t;
      const bool half_turn_perp = std::abs(moving[i]->w) <= t && std::abs(dot(axes[i], L)) <= t;
      ok = about || half_turn_perp;
    }
    if (ok) {
      return L;
    }
  }
  return std::nullopt;
}

ImageClassification classify_subgroup(const std::vector<UnitQuaternion>& generators, const Tolerances& tol) {
  if (generators.empty()) {
    throw std::invalid_argument("classify_subgroup needs at least one generator");
  }
  const FiniteClosure fc = finite_closure(generators, 240, tol);
  if (fc.closed) {
    return classify_finite(generators, fc.elements, tol);
  }
  ImageClassification c;
  if (auto axis = pin2_geometric_test(generators, tol)) {
    c.axis = axis;
    c.in_pin2 = true;
    c.in_spin2 = all_commute(generators, tol.cluster * 10.0);
    c.kind = c.in_spin2 ? "spin2_infinite" : "pin2_infinite";
    c.witness = "closure exceeds cap 240; invariant axis found";
    return c;
  }
  c.is_dense = true;
  c.kind = "dense";
  c.witness = "closure exceeds cap 240; no invariant axis";
  return c;
}

ImageClassification classify_subgroup(const std::vector<ExactQuaternion>& generators) {
  if (generators.empty()) {
    throw std::invalid_argument("classify_subgroup needs at least one generator");
  }
  std::vector<UnitQuaternion> fgens;
  for (const auto& g : generators) {
    fgens.push_back(g.to_float());
  }
  const ExactClosure ec = finite_closure(generators, 240);
  if (!ec.closed) {
    // Entries in Q(sqrt2, sqrt5) with an infinite closure: decide by the axis test on floats.
    return classify_subgroup(fgens);
  }
  std::vector<UnitQuaternion> elems;
  for (const auto& e : ec.elements) {
    elems.push_back(e.to_float());
  }
  ImageClassification c = classify_finite(fgens, elems, default_tolerances);
  c.witness += " (exact)";
  return c;
}

const std::vector<double>& special_k_values() {
  static const std::vector<double> v{0.0, 1.0, (1.0 + std::sqrt(5.0)) / 2.0, (1.0 - std::sqrt(5.0)) / 2.0};
  return v;
}

bool is_special_k(double k, const Tolerances& tol) {
  return std::any_of(special_k_values().begin(), special_k_values().end(),
                     [&](double s) { return near(k, s, tol.criterion); });
}

double one_holed_k(double x, double y, double z) { return x * x + y * y + z * z - x * y * z - 2.0; }

bool on_one_holed_pin2_locus(double x, double y, double z, const Tolerances& tol) {
  const double t = tol.criterion;
  const int zeros = (std::abs(x) <= t) + (std::abs(y) <= t) + (std::abs(z) <= t);
  return zeros >= 2;
}

bool one_holed_genericity_shortcut(double x, double y, double z, const Tolerances& tol) {
  const double k = one_holed_k(x, y, z);
  if (is_special_k(k, tol) || near(k, 2.0, tol.criterion) || near(k, -2.0, tol.criterion)) {
    return false;
  }
  return !on_one_holed_pin2_locus(x, y, z, tol);
}

std::string to_json_string(const ImageClassification& c) {
  nlohmann::ordered_json j;
  j["kind"] = c.kind;
  j["central"] = c.central;
  j["in_spin2"] = c.in_spin2;
  j["in_pin2"] = c.in_pin2;
  j["in_T"] = c.in_T;
  j["in_C"] = c.in_C;
  j["in_D"] = c.in_D;
  j["is_dense"] = c.is_dense;
  j["order"] = c.order;
  if (c.axis) {
    j["axis"] = *c.axis;
  } else {
    j["axis"] = nullptr;
  }
  j["witness"] = c.witness;
  return j.dump(2);
}

}  // namespace su2twist
