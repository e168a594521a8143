#include "su2twist/orbit_lab.hpp"

#include "su2twist/sphere_four.hpp"
#include "su2twist/torus_family.hpp"
#include "su2twist/torus_one.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace su2twist {

PantsDecomposition PantsDecomposition::standard(int g, int n) {
  if (g < 0 || n < 0 || (g == 0 && n < 3) || (g == 1 && n == 0)) {
    throw std::invalid_argument("no pants decomposition for (g, n) = (" + std::to_string(g) + ", " +
                                std::to_string(n) + ")");
  }
  PantsDecomposition P;
  P.genus = g;
  P.boundary = n;
  for (int i = 0; i < g; ++i) {
    P.curves.push_back(FreeWord::generator(i));
  }
  // Boundary loops are referenced as -(l+1) until the curve count is known.
  struct Item {
    FreeWord word;
    int ref;
  };
  std::vector<Item> items;
  const int m = g + n;
  std::vector<std::array<int, 3>> pants;
  if (m >= 3) {
    for (int i = 0; i < g; ++i) {
      P.curves.push_back(commutator_word(FreeWord::generator(i), FreeWord::generator(g + i)));
      items.push_back({P.curves.back(), static_cast<int>(P.curves.size()) - 1});
      pants.push_back({i, i, items.back().ref});
    }
    for (int l = 0; l < n; ++l) {
      items.push_back({FreeWord::generator(2 * g + l), -(l + 1)});
    }
    Item running = items[0];
    for (int j = 1; j <= m - 2; ++j) {
      if (j == m - 2) {
        pants.push_back({running.ref, items[j].ref, items[j + 1].ref});
        break;
      }
      P.curves.push_back(running.word * items[j].word);
      const Item next{P.curves.back(), static_cast<int>(P.curves.size()) - 1};
      pants.push_back({running.ref, items[j].ref, next.ref});
      running = next;
    }
  } else if (g == 1 && n == 1) {
    pants.push_back({0, 0, -1});
  } else {  // g == 2, n == 0
    P.curves.push_back(commutator_word(FreeWord::generator(0), FreeWord::generator(2)));
    pants.push_back({0, 0, 2});
    pants.push_back({1, 1, 2});
  }
  const int nc = static_cast<int>(P.curves.size());
  for (auto& t : pants) {
    for (int& r : t) {
      if (r < 0) {
        r = nc + (-r - 1);
      }
    }
  }
  P.pants = std::move(pants);
  P.signs.assign(P.pants.size(), 1);
  return P;
}

std::vector<double> pants_coords(const SurfaceRep& rep, const PantsDecomposition& P) {
  std::vector<double> beta;
  beta.reserve(P.curves.size());
  for (const auto& c : P.curves) {
    beta.push_back(rep.trace_of(c));
  }
  return beta;
}

std::vector<double> check_pants_inequalities(const std::vector<double>& beta, const PantsDecomposition& P,
                                             const std::vector<double>& boundary_traces) {
  if (beta.size() != P.curves.size()) {
    throw std::invalid_argument("beta has the wrong dimension for this decomposition");
  }
  const auto value = [&](int r) {
    if (r < static_cast<int>(beta.size())) {
      return beta[static_cast<std::size_t>(r)];
    }
    const auto l = static_cast<std::size_t>(r) - beta.size();
    if (l >= boundary_traces.size()) {
      throw std::invalid_argument("missing boundary trace for a pants");
    }
    return boundary_traces[l];
  };
  std::vector<double> out;
  for (std::size_t p = 0; p < P.pants.size(); ++p) {
    const double bi = value(P.pants[p][0]);
    const double bj = value(P.pants[p][1]);
    const double bk = value(P.pants[p][2]);
    const double c = P.signs.empty() ? 1.0 : P.signs[p];
    out.push_back(4.0 - (bi * bi + bj * bj + bk * bk - c * bi * bj * bk));
  }
  return out;
}

std::vector<double> fibre_rotation_angles(const std::vector<double>& beta) {
  std::vector<double> out;
  for (double b : beta) {
    out.push_back(std::acos(std::clamp(b / 2.0, -1.0, 1.0)));
  }
  return out;
}

GenericHandleResult find_generic_handle(const SurfaceRep& rep, const Tolerances& tol) {
  const int g = rep.presentation().genus();
  const int ngen = rep.presentation().generator_count();
  if (g < 1) {
    throw std::invalid_argument("find_generic_handle needs genus >= 1");
  }
  const auto& names = rep.presentation().names();
  const auto gen = [](int i) { return FreeWord::generator(i); };

  std::vector<HandleCandidate> cands;
  const auto add = [&](FreeWord a, FreeWord b) {
    HandleCandidate c;
    c.label = "(" + a.to_string(names) + ", " + b.to_string(names) + ")";
    c.first = std::move(a);
    c.second = std::move(b);
    cands.push_back(std::move(c));
  };
  for (int i = 0; i < g; ++i) {
    add(gen(i), gen(g + i));
  }
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < ngen; ++j) {
      if (j == i || j == g + i) {
        continue;
      }
      add(gen(i), gen(g + i) * gen(j));
      add(gen(i) * gen(j), gen(g + i));
      add(gen(i), gen(j) * gen(g + i));
      add(gen(j) * gen(i), gen(g + i));
    }
  }
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < ngen; ++j) {
      if (j != i && j != g + i) {
        add(gen(i), gen(g + i) * gen(i) * gen(j));
      }
    }
  }

  GenericHandleResult res;
  std::optional<HandleCandidate> first_dense;
  for (auto& c : cands) {
    const UnitQuaternion X = rep.evaluate(c.first);
    const UnitQuaternion Y = rep.evaluate(c.second);
    const double x = X.trace();
    const double y = Y.trace();
    const double z = (X * Y).trace();
    c.k = one_holed_k(x, y, z);
    if (one_holed_genericity_shortcut(x, y, z, tol)) {
      c.dense = true;
      c.kind = "shortcut";
    } else {
      try {
        const ImageClassification cls = classify_subgroup({X, Y}, tol);
        c.dense = cls.is_dense;
        c.kind = cls.kind;
      } catch (const ClusteringAmbiguity&) {
        c.kind = "ambiguous";
      }
    }
    if (c.dense && !is_special_k(c.k, tol)) {
      res.found = true;
      res.handle = c;
      return res;
    }
    if (c.dense && !first_dense) {
      first_dense = c;
    }
    res.trail.push_back(c);
  }
  if (first_dense) {
    res.found = true;
    res.handle = *first_dense;
  }
  return res;
}

std::string to_string(ChartKind c) {
  switch (c) {
    case ChartKind::OneHoled:
      return "one-holed";
    case ChartKind::FourHoled:
      return "four-holed";
    case ChartKind::TwoHoled:
      return "two-holed";
    case ChartKind::Surface:
      return "surface";
  }
  return "?";
}

ChartKind chart_from_string(const std::string& s) {
  for (ChartKind c : {ChartKind::OneHoled, ChartKind::FourHoled, ChartKind::TwoHoled, ChartKind::Surface}) {
    if (to_string(c) == s) {
      return c;
    }
  }
  throw std::invalid_argument("unknown chart: " + s);
}

std::vector<std::string> chart_twists(ChartKind chart, int g, int n) {
  switch (chart) {
    case ChartKind::OneHoled:
      return {"X", "Y"};
    case ChartKind::FourHoled:
      return {"X", "Y", "Z"};
    case ChartKind::TwoHoled:
      return {"X", "Y", "K", "W", "Wp"};
    case ChartKind::Surface: {
      std::vector<std::string> t;
      for (int i = 1; i <= g; ++i) {
        t.push_back("A" + std::to_string(i));
        t.push_back("B" + std::to_string(i));
      }
      const int m = g + n;
      if (m >= 2) {
        for (int i = 1; i <= g; ++i) {
          t.push_back("K" + std::to_string(i));
        }
      }
      for (int j = 1; j <= m - 3; ++j) {
        t.push_back("D" + std::to_string(j));
      }
      return t;
    }
  }
  return {};
}

std::vector<std::string> chart_coordinate_names(ChartKind chart, int g, int n) {
  switch (chart) {
    case ChartKind::OneHoled:
    case ChartKind::FourHoled:
      return {"x", "y", "z"};
    case ChartKind::TwoHoled:
      return {"x", "y", "k", "w", "wp"};
    case ChartKind::Surface: {
      const PantsDecomposition P = PantsDecomposition::standard(g, n);
      std::vector<std::string> out;
      for (std::size_t i = 1; i <= P.curves.size(); ++i) {
        out.push_back("b" + std::to_string(i));
      }
      return out;
    }
  }
  return {};
}

double chart_residual(const OrbitSample& s, const double* p) {
  const auto& q = s.parameters;
  switch (s.chart) {
    case ChartKind::OneHoled:
      return k_of({p[0], p[1], p[2]}) - q.at(0);
    case ChartKind::FourHoled: {
      T4Point t;
      t.kappa.a = q.at(0);
      t.kappa.b = q.at(1);
      t.kappa.c = q.at(2);
      t.kappa.d = q.at(3);
      t.x = p[0];
      t.y = p[1];
      t.z = p[2];
      return e_kappa_residual(t);
    }
    case ChartKind::TwoHoled:
      return t2_residual({q.at(0), q.at(1), p[0], p[1], p[2], p[3], p[4]});
    case ChartKind::Surface:
      return std::numeric_limits<double>::quiet_NaN();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

UnitQuaternion qpow(const UnitQuaternion& q, long n) {
  UnitQuaternion base = n < 0 ? q.inverse() : q;
  unsigned long e = static_cast<unsigned long>(std::labs(n));
  UnitQuaternion r = UnitQuaternion::identity();
  while (e != 0) {
    if ((e & 1UL) != 0) {
      r = (r * base).normalized();
    }
    base = (base * base).normalized();
    e >>= 1U;
  }
  return r;
}

UnitQuaternion conj(const UnitQuaternion& g, const UnitQuaternion& q) { return (g * q * g.inverse()).normalized(); }

class WalkState {
 public:
  virtual ~WalkState() = default;
  virtual std::unique_ptr<WalkState> clone() const = 0;
  virtual void twist(const std::string& gen, long power) = 0;
  virtual void coords(double* out) const = 0;
  virtual std::vector<double> invariants() const = 0;
  virtual std::vector<UnitQuaternion*> slots() = 0;
};

class OneHoledState : public WalkState {
 public:
  explicit OneHoledState(const SurfaceRep& r) : h_{r.images()[0], r.images()[1]} {}
  std::unique_ptr<WalkState> clone() const override { return std::make_unique<OneHoledState>(*this); }
  void twist(const std::string& gen, long power) override {
    h_ = gen == "X" ? twist_x(h_, power) : twist_y(h_, power);
  }
  void coords(double* out) const override {
    const T1Point p = traces_of(h_);
    out[0] = p.x;
    out[1] = p.y;
    out[2] = p.z;
  }
  std::vector<double> invariants() const override { return {commutator(h_.X, h_.Y).trace()}; }
  std::vector<UnitQuaternion*> slots() override { return {&h_.X, &h_.Y}; }

 private:
  HandlePair h_;
};

class FourHoledState : public WalkState {
 public:
  explicit FourHoledState(const SurfaceRep& r)
      : s_{r.images()[0], r.images()[1], r.images()[2], r.images()[3]} {}
  std::unique_ptr<WalkState> clone() const override { return std::make_unique<FourHoledState>(*this); }
  void twist(const std::string& gen, long power) override {
    s_ = gen == "X" ? s_.twist_x(power) : gen == "Y" ? s_.twist_y(power) : s_.twist_z(power);
  }
  void coords(double* out) const override {
    const T4Point p = s_.point();
    out[0] = p.x;
    out[1] = p.y;
    out[2] = p.z;
  }
  std::vector<double> invariants() const override {
    const Kappa4 k = s_.kappa();
    return {k.a, k.b, k.c, k.d};
  }
  std::vector<UnitQuaternion*> slots() override { return {&s_.A, &s_.B, &s_.C, &s_.D}; }

 private:
  FourHoledSphereRep s_;
};

class TwoHoledState : public WalkState {
 public:
  explicit TwoHoledState(const SurfaceRep& r) : t_(TwoHoledTorusRep::from_surface(r)) {}
  std::unique_ptr<WalkState> clone() const override { return std::make_unique<TwoHoledState>(*this); }
  void twist(const std::string& gen, long power) override { t_ = t_.twist(gen, power); }
  void coords(double* out) const override {
    const T2Point p = t_.point();
    out[0] = p.x;
    out[1] = p.y;
    out[2] = p.k;
    out[3] = p.w;
    out[4] = p.wp;
  }
  std::vector<double> invariants() const override { return {t_.A.trace(), t_.B.trace()}; }
  std::vector<UnitQuaternion*> slots() override { return {&t_.X, &t_.Y, &t_.B, &t_.A}; }

 private:
  TwoHoledTorusRep t_;
};

// Twists on a general surface: along A_i and A_{g+i} inside handle i, and along the separating
// curves of the standard decomposition (conjugation of the enclosed generators by the curve).
class SurfaceState : public WalkState {
 public:
  explicit SurfaceState(const SurfaceRep& r)
      : g_(r.presentation().genus()),
        n_(r.presentation().boundary()),
        im_(r.images()),
        pants_(PantsDecomposition::standard(g_, n_)) {}
  std::unique_ptr<WalkState> clone() const override { return std::make_unique<SurfaceState>(*this); }

  void twist(const std::string& gen, long power) override {
    if (gen.size() < 2) {
      throw std::invalid_argument("bad surface twist: " + gen);
    }
    const int idx = std::stoi(gen.substr(1)) - 1;
    const char kind = gen[0];
    if ((kind == 'A' || kind == 'B' || kind == 'K') && (idx < 0 || idx >= g_)) {
      throw std::invalid_argument("handle index out of range in twist " + gen);
    }
    if (kind == 'A') {
      auto& y = im_[static_cast<std::size_t>(g_ + idx)];
      y = (y * qpow(im_[static_cast<std::size_t>(idx)], power)).normalized();
    } else if (kind == 'B') {
      auto& x = im_[static_cast<std::size_t>(idx)];
      x = (x * qpow(im_[static_cast<std::size_t>(g_ + idx)], power)).normalized();
    } else if (kind == 'K') {
      const UnitQuaternion c = qpow(commutator(im_[static_cast<std::size_t>(idx)], im_[static_cast<std::size_t>(g_ + idx)]), power);
      for (int s : {idx, g_ + idx}) {
        im_[static_cast<std::size_t>(s)] = conj(c, im_[static_cast<std::size_t>(s)]);
      }
    } else if (kind == 'D') {
      // D_j encloses the first j+1 factors of [K_1, ..., K_g, C_1, ..., C_n].
      const int factors = idx + 2;
      if (idx < 0 || factors > g_ + n_ - 1) {
        throw std::invalid_argument("chain index out of range in twist " + gen);
      }
      std::vector<int> gens;
      UnitQuaternion d = UnitQuaternion::identity();
      for (int f = 0; f < factors; ++f) {
        if (f < g_) {
          gens.push_back(f);
          gens.push_back(g_ + f);
          d = d * commutator(im_[static_cast<std::size_t>(f)], im_[static_cast<std::size_t>(g_ + f)]);
        } else {
          gens.push_back(2 * g_ + (f - g_));
          d = d * im_[static_cast<std::size_t>(2 * g_ + (f - g_))];
        }
      }
      const UnitQuaternion c = qpow(d.normalized(), power);
      for (int s : gens) {
        im_[static_cast<std::size_t>(s)] = conj(c, im_[static_cast<std::size_t>(s)]);
      }
    } else {
      throw std::invalid_argument("unknown surface twist: " + gen);
    }
  }

  void coords(double* out) const override {
    std::size_t i = 0;
    for (const auto& c : pants_.curves) {
      out[i++] = evaluate_word(im_, c).trace();
    }
  }

  std::vector<double> invariants() const override {
    std::vector<double> t;
    for (int l = 0; l < n_; ++l) {
      t.push_back(im_[static_cast<std::size_t>(2 * g_ + l)].trace());
    }
    return t;
  }

  std::vector<UnitQuaternion*> slots() override {
    std::vector<UnitQuaternion*> out;
    for (auto& q : im_) {
      out.push_back(&q);
    }
    return out;
  }

 private:
  int g_;
  int n_;
  std::vector<UnitQuaternion> im_;
  PantsDecomposition pants_;
};

std::unique_ptr<WalkState> make_state(const SurfaceRep& rep, ChartKind chart) {
  const int g = rep.presentation().genus();
  const int n = rep.presentation().boundary();
  const auto need = [&](int gg, int nn) {
    if (g != gg || n != nn) {
      throw std::invalid_argument("chart " + to_string(chart) + " needs (g, n) = (" + std::to_string(gg) + ", " +
                                  std::to_string(nn) + ")");
    }
  };
  switch (chart) {
    case ChartKind::OneHoled:
      need(1, 1);
      return std::make_unique<OneHoledState>(rep);
    case ChartKind::FourHoled:
      need(0, 4);
      return std::make_unique<FourHoledState>(rep);
    case ChartKind::TwoHoled:
      need(1, 2);
      return std::make_unique<TwoHoledState>(rep);
    case ChartKind::Surface:
      return std::make_unique<SurfaceState>(rep);
  }
  throw std::invalid_argument("unknown chart");
}

// Exact reps with finite image: after each twist every image is replaced by the nearest group
// element. One twist moves a float image by ~1e-15 while group elements are >= 0.1 apart, so this
// reproduces exact arithmetic; without it the orbit drifts off the finite group within a few
// hundred steps.
class Snapper {
 public:
  explicit Snapper(std::vector<UnitQuaternion> elements) : el_(std::move(elements)) {}

  void operator()(WalkState& s) const {
    for (UnitQuaternion* q : s.slots()) {
      const UnitQuaternion* best = nullptr;
      double bd = std::numeric_limits<double>::infinity();
      for (const auto& e : el_) {
        const double d = std::abs(q->w - e.w) + std::abs(q->x - e.x) + std::abs(q->y - e.y) + std::abs(q->z - e.z);
        if (d < bd) {
          bd = d;
          best = &e;
        }
      }
      if (best == nullptr || bd > 1e-6) {
        throw std::logic_error("orbit left the finite image group");
      }
      *q = *best;
    }
  }

 private:
  std::vector<UnitQuaternion> el_;
};

std::optional<Snapper> finite_snapper(const SurfaceRep& rep) {
  if (!rep.is_exact()) {
    return std::nullopt;
  }
  const ExactClosure cl = finite_closure(*rep.exact_images(), 240);
  if (!cl.closed) {
    return std::nullopt;
  }
  std::vector<UnitQuaternion> f;
  f.reserve(cl.elements.size());
  for (const auto& e : cl.elements) {
    f.push_back(e.to_float());
  }
  return Snapper(std::move(f));
}

struct Shard {
  std::vector<double> coords;
  std::vector<std::string> words;
  double drift = 0.0;
};

std::string step_name(const std::string& gen, long power) { return gen + std::to_string(power); }

double drift_of(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

void random_walk(const WalkState& start, const std::vector<std::string>& twists, std::size_t steps,
                 std::uint64_t seed, std::size_t dim, const std::optional<Snapper>& snap, Shard& out) {
  Rng rng(seed);
  std::unique_ptr<WalkState> s = start.clone();
  const std::vector<double> inv0 = start.invariants();
  out.coords.reserve(steps * dim);
  out.words.reserve(steps);
  std::vector<double> buf(dim);
  const std::uint64_t choices = 2 * twists.size();
  for (std::size_t i = 0; i < steps; ++i) {
    const std::uint64_t c = rng() % choices;
    const std::string& gen = twists[static_cast<std::size_t>(c / 2)];
    const long power = (c % 2 == 0) ? 1 : -1;
    s->twist(gen, power);
    if (snap) {
      (*snap)(*s);
    }
    s->coords(buf.data());
    out.coords.insert(out.coords.end(), buf.begin(), buf.end());
    out.words.push_back(step_name(gen, power));
    if ((i & 255U) == 0 || i + 1 == steps) {
      out.drift = std::max(out.drift, drift_of(s->invariants(), inv0));
    }
  }
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

}  // namespace

OrbitSample orbit_sample(const SurfaceRep& rep, const OrbitOptions& opts) {
  if (opts.budget == 0) {
    throw std::invalid_argument("orbit_sample needs budget >= 1");
  }
  const int g = rep.presentation().genus();
  const int n = rep.presentation().boundary();
  std::unique_ptr<WalkState> start = make_state(rep, opts.chart);
  std::vector<std::string> twists = opts.twists.empty() ? chart_twists(opts.chart, g, n) : opts.twists;
  const std::vector<std::string> allowed = chart_twists(opts.chart, g, n);
  for (const auto& t : twists) {
    if (std::find(allowed.begin(), allowed.end(), t) == allowed.end()) {
      throw std::invalid_argument("twist " + t + " is not available on chart " + to_string(opts.chart));
    }
  }
  if (twists.empty()) {
    throw std::invalid_argument("chart has no twists");
  }

  OrbitSample s;
  s.chart = opts.chart;
  s.coordinate_names = chart_coordinate_names(opts.chart, g, n);
  s.dim = s.coordinate_names.size();
  s.parameters = start->invariants();
  s.words_from_start = opts.strategy == Strategy::BreadthFirst;
  s.coords.resize(s.dim);
  start->coords(s.coords.data());
  s.words.emplace_back("");

  const std::optional<Snapper> snap = finite_snapper(rep);
  s.exact_finite_image = snap.has_value();
  const std::size_t steps = opts.budget - 1;
  if (opts.strategy == Strategy::RandomWalk) {
    const unsigned workers = std::max(1U, opts.workers);
    std::vector<Shard> shards(workers);
    std::vector<std::size_t> share(workers, steps / workers);
    for (std::size_t i = 0; i < steps % workers; ++i) {
      ++share[i];
    }
    if (workers == 1) {
      random_walk(*start, twists, share[0], opts.seed, s.dim, snap, shards[0]);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          random_walk(*start, twists, share[w], splitmix(opts.seed + w), s.dim, snap, shards[w]);
        });
      }
      for (auto& t : pool) {
        t.join();
      }
    }
    for (auto& sh : shards) {
      s.coords.insert(s.coords.end(), sh.coords.begin(), sh.coords.end());
      s.words.insert(s.words.end(), std::make_move_iterator(sh.words.begin()),
                     std::make_move_iterator(sh.words.end()));
      s.max_invariant_drift = std::max(s.max_invariant_drift, sh.drift);
    }
    return s;
  }

  // Breadth-first over reduced words, generators in order with +1 before -1.
  struct Node {
    std::unique_ptr<WalkState> state;
    TwistWord word;
    int last = -1;  // choice index of the last letter
  };
  std::vector<Node> frontier;
  frontier.push_back({start->clone(), {}, -1});
  const std::vector<double> inv0 = start->invariants();
  std::vector<double> buf(s.dim);
  while (s.size() < opts.budget && !frontier.empty()) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (int c = 0; c < static_cast<int>(2 * twists.size()); ++c) {
        if (node.last >= 0 && (c ^ 1) == node.last) {
          continue;  // would cancel the previous letter
        }
        if (s.size() >= opts.budget) {
          break;
        }
        const std::string& gen = twists[static_cast<std::size_t>(c / 2)];
        const long power = c % 2 == 0 ? 1 : -1;
        Node child{node.state->clone(), node.word, c};
        child.state->twist(gen, power);
        if (snap) {
          (*snap)(*child.state);
        }
        child.word.append(gen, power);
        child.state->coords(buf.data());
        s.coords.insert(s.coords.end(), buf.begin(), buf.end());
        s.words.push_back(child.word.to_string());
        s.max_invariant_drift = std::max(s.max_invariant_drift, drift_of(child.state->invariants(), inv0));
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return s;
}

namespace {

struct Grid {
  std::size_t dim;
  std::vector<std::size_t> counts;
  std::vector<double> lo;
  double pitch;
  std::size_t total = 1;

  // Index of the cell holding p, or npos when p is outside the region.
  std::size_t cell_of(const double* p, const std::vector<double>& hi) const {
    std::size_t idx = 0;
    for (std::size_t d = 0; d < dim; ++d) {
      if (p[d] < lo[d] || p[d] > hi[d]) {
        return std::string::npos;
      }
      auto c = static_cast<std::size_t>(std::floor((p[d] - lo[d]) / pitch));
      c = std::min(c, counts[d] - 1);
      idx = idx * counts[d] + c;
    }
    return idx;
  }
};

}  // namespace

DensityReport density_report(const OrbitSample& sample, const Box& region, double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("density_report needs eps > 0");
  }
  const std::size_t dim = sample.dim;
  if (region.lo.size() != dim || region.hi.size() != dim) {
    throw std::invalid_argument("region dimension does not match the sample");
  }
  Grid grid{dim, {}, region.lo, eps};
  for (std::size_t d = 0; d < dim; ++d) {
    if (!(region.hi[d] > region.lo[d])) {
      throw std::invalid_argument("density_report needs a nonempty region");
    }
    grid.counts.push_back(static_cast<std::size_t>(std::ceil((region.hi[d] - region.lo[d]) / eps - 1e-9)));
    grid.total *= grid.counts.back();
  }
  if (grid.total > 50'000'000) {
    throw std::invalid_argument("density grid too fine: " + std::to_string(grid.total) + " cells");
  }

  DensityReport r;
  r.region = region;
  r.eps = eps;
  r.pitch = eps;
  r.grid_cells = grid.total;
  r.sample_count = sample.size();

  // Cells meeting the variety: sign change among the corners and the centre.
  std::vector<char> on(grid.total, 1);
  const bool has_equation = sample.chart != ChartKind::Surface;
  if (has_equation) {
    std::vector<std::size_t> idx(dim);
    std::vector<double> p(dim);
    const std::size_t corners = std::size_t{1} << dim;
    for (std::size_t cell = 0; cell < grid.total; ++cell) {
      std::size_t rem = cell;
      for (std::size_t d = dim; d-- > 0;) {
        idx[d] = rem % grid.counts[d];
        rem /= grid.counts[d];
      }
      bool pos = false;
      bool neg = false;
      for (std::size_t c = 0; c <= corners && !(pos && neg); ++c) {
        for (std::size_t d = 0; d < dim; ++d) {
          const double base = region.lo[d] + eps * static_cast<double>(idx[d]);
          const double off = c == corners ? 0.5 : static_cast<double>((c >> d) & 1U);
          p[d] = std::min(base + eps * off, region.hi[d]);
        }
        const double v = chart_residual(sample, p.data());
        pos = pos || v >= 0.0;
        neg = neg || v <= 0.0;
      }
      on[cell] = static_cast<char>(pos && neg);
    }
  }
  std::vector<char> hit(grid.total, 0);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const std::size_t c = grid.cell_of(sample.point(i), region.hi);
    if (c == std::string::npos) {
      continue;
    }
    if (on[c] != 0) {
      hit[c] = 1;
    } else {
      ++r.points_outside_surface_cells;
    }
  }
  for (std::size_t c = 0; c < grid.total; ++c) {
    r.total_cells += on[c] != 0 ? 1 : 0;
    r.hit_cells += hit[c] != 0 ? 1 : 0;
  }
  r.coverage = r.total_cells == 0 ? 0.0 : static_cast<double>(r.hit_cells) / static_cast<double>(r.total_cells);

  std::size_t total_len = 0;
  for (const auto& w : sample.words) {
    const std::size_t len = w.empty() ? 0 : TwistWord::parse(w).length();
    total_len += len;
    r.max_word_length = std::max(r.max_word_length, len);
  }
  r.mean_word_length = sample.words.empty() ? 0.0 : static_cast<double>(total_len) / sample.words.size();
  return r;
}

std::string to_json_string(const DensityReport& r) {
  nlohmann::ordered_json j;
  j["region"] = {{"lo", r.region.lo}, {"hi", r.region.hi}};
  j["eps"] = r.eps;
  j["pitch"] = r.pitch;
  j["hit_cells"] = r.hit_cells;
  j["surface_cells"] = r.total_cells;
  j["grid_cells"] = r.grid_cells;
  j["coverage"] = r.coverage;
  j["sample_count"] = r.sample_count;
  j["points_outside_surface_cells"] = r.points_outside_surface_cells;
  j["mean_word_length"] = r.mean_word_length;
  j["max_word_length"] = r.max_word_length;
  return j.dump(2);
}

void write_csv(std::ostream& os, const OrbitSample& s) {
  for (const auto& n : s.coordinate_names) {
    os << n << ',';
  }
  os << "word\n";
  char buf[64];
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double* p = s.point(i);
    for (std::size_t d = 0; d < s.dim; ++d) {
      std::snprintf(buf, sizeof buf, "%.17g", p[d]);
      os << buf << ',';
    }
    os << s.words[i] << '\n';
  }
}

}  // namespace su2twist
