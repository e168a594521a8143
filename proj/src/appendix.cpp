#include "su2twist/appendix.hpp"

#include "su2twist/surface.hpp"
#include "su2twist/word.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace su2twist {

namespace {

using nlohmann::json;

// ---- interval arithmetic -------------------------------------------------

struct Iv {
  double lo;
  double hi;
};

Iv pt(double v) { return {v, v}; }
Iv operator+(Iv a, Iv b) { return {a.lo + b.lo, a.hi + b.hi}; }
Iv operator-(Iv a, Iv b) { return {a.lo - b.hi, a.hi - b.lo}; }
Iv operator-(Iv a) { return {-a.hi, -a.lo}; }
Iv operator*(Iv a, Iv b) {
  const double p1 = a.lo * b.lo;
  const double p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo;
  const double p4 = a.hi * b.hi;
  return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}
Iv sqr(Iv a) {
  if (a.lo >= 0.0) {
    return {a.lo * a.lo, a.hi * a.hi};
  }
  if (a.hi <= 0.0) {
    return {a.hi * a.hi, a.lo * a.lo};
  }
  return {0.0, std::max(a.lo * a.lo, a.hi * a.hi)};
}

// Rounding is not directed; the pad absorbs it for values of size O(1).
constexpr double kPad = 1e-11;
bool contains_zero(Iv a) { return a.lo - kPad <= 0.0 && 0.0 <= a.hi + kPad; }

// Interval value with an interval enclosure of its gradient in (w, x, y, z).
struct Dual {
  Iv v{0.0, 0.0};
  std::array<Iv, 4> d{};
};

Dual operator+(const Dual& a, const Dual& b) {
  Dual r{a.v + b.v, {}};
  for (int i = 0; i < 4; ++i) {
    r.d[i] = a.d[i] + b.d[i];
  }
  return r;
}
Dual operator-(const Dual& a, const Dual& b) {
  Dual r{a.v - b.v, {}};
  for (int i = 0; i < 4; ++i) {
    r.d[i] = a.d[i] - b.d[i];
  }
  return r;
}
Dual operator*(const Dual& a, const Dual& b) {
  Dual r{a.v * b.v, {}};
  for (int i = 0; i < 4; ++i) {
    r.d[i] = a.v * b.d[i] + a.d[i] * b.v;
  }
  return r;
}

using DualQ = std::array<Dual, 4>;

DualQ mul(const DualQ& a, const DualQ& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

DualQ constant(const UnitQuaternion& q) {
  DualQ r{};
  const auto c = q.components();
  for (int i = 0; i < 4; ++i) {
    r[i].v = pt(c[i]);
  }
  return r;
}

using Box = std::array<Iv, 4>;

DualQ variable(const Box& box, int exp) {
  DualQ r{};
  for (int i = 0; i < 4; ++i) {
    const double sign = (i == 0 || exp > 0) ? 1.0 : -1.0;
    r[i].v = sign > 0 ? box[i] : -box[i];
    r[i].d[i] = pt(sign);
  }
  return r;
}

// ---- compiled constraint words ------------------------------------------

struct Factor {
  bool is_var = false;
  int exp = 1;
  UnitQuaternion c;
};

struct Compiled {
  std::vector<Factor> factors;
  double target = 0.0;
};

const std::vector<std::string>& letter_names() {
  static const std::vector<std::string> names{"Ai", "Ag", "Aj"};
  return names;
}

FreeWord parse_case_word(const std::string& w) { return FreeWord::parse(w, letter_names()); }

Compiled compile(const PolyhedralPair& pair, const TraceConstraint& tc) {
  const UnitQuaternion ai = pair.ai.to_float();
  const UnitQuaternion ag = pair.ag.to_float();
  Compiled out;
  out.target = tc.value.to_double();
  const FreeWord word = parse_case_word(tc.word);
  for (const auto& l : word.letters()) {
    if (l.gen == 2) {
      out.factors.push_back({true, l.exp, {}});
      continue;
    }
    const UnitQuaternion g = l.gen == 0 ? ai : ag;
    const UnitQuaternion f = l.exp > 0 ? g : g.inverse();
    if (!out.factors.empty() && !out.factors.back().is_var) {
      out.factors.back().c = out.factors.back().c * f;
    } else {
      out.factors.push_back({false, 1, f});
    }
  }
  return out;
}

double trace_at(const Compiled& c, const UnitQuaternion& q) {
  UnitQuaternion acc = UnitQuaternion::identity();
  for (const auto& f : c.factors) {
    acc = acc * (f.is_var ? (f.exp > 0 ? q : q.inverse()) : f.c);
  }
  return acc.trace();
}

Dual trace_dual(const Compiled& c, const Box& box) {
  DualQ acc = constant(UnitQuaternion::identity());
  for (const auto& f : c.factors) {
    acc = mul(acc, f.is_var ? variable(box, f.exp) : constant(f.c));
  }
  Dual t = acc[0] + acc[0];
  return t;
}

bool feasible(const std::vector<Compiled>& cs, const Box& box, double width) {
  const Iv g = sqr(box[0]) + sqr(box[1]) + sqr(box[2]) + sqr(box[3]) - pt(1.0);
  if (!contains_zero(g)) {
    return false;
  }
  for (const auto& c : cs) {
    const Dual t = trace_dual(c, box);
    if (!contains_zero(t.v - pt(c.target))) {
      return false;
    }
    if (width <= 0.25) {
      const UnitQuaternion mid{0.5 * (box[0].lo + box[0].hi), 0.5 * (box[1].lo + box[1].hi),
                               0.5 * (box[2].lo + box[2].hi), 0.5 * (box[3].lo + box[3].hi)};
      const auto m = mid.components();
      Iv mv = pt(trace_at(c, mid) - c.target);
      for (int i = 0; i < 4; ++i) {
        mv = mv + t.d[i] * (box[i] - pt(m[i]));
      }
      if (!contains_zero(mv)) {
        return false;
      }
    }
  }
  return true;
}

// ---- small helpers -------------------------------------------------------

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

ExactQuaternion exact_from(const std::array<ParsedValue, 4>& v) { return {*v[0].exact, *v[1].exact, *v[2].exact, *v[3].exact}; }

bool all_exact(const std::array<ParsedValue, 4>& v) {
  return std::all_of(v.begin(), v.end(), [](const ParsedValue& p) { return p.exact.has_value(); });
}

UnitQuaternion float_from(const std::array<ParsedValue, 4>& v) {
  return {v[0].to_double(), v[1].to_double(), v[2].to_double(), v[3].to_double()};
}

ExactQuaternion parse_exact_quaternion(const json& arr, const std::string& what) {
  if (!arr.is_array() || arr.size() != 4) {
    throw std::invalid_argument(what + ": expected four entries");
  }
  std::array<QFElement, 4> c;
  for (std::size_t i = 0; i < 4; ++i) {
    const ParsedValue v = parse_value(arr[i].get<std::string>());
    if (!v.exact) {
      throw std::invalid_argument(what + ": entry is not exact");
    }
    c[i] = *v.exact;
  }
  ExactQuaternion q{c[0], c[1], c[2], c[3]};
  if (!q.is_unit()) {
    throw std::invalid_argument(what + ": not a unit quaternion");
  }
  return q;
}

std::vector<std::array<ParsedValue, 4>> parse_solutions(const json& j) {
  std::vector<std::array<ParsedValue, 4>> out;
  for (const auto& s : j) {
    if (!s.is_array() || s.size() != 4) {
      throw std::invalid_argument("solution needs four entries");
    }
    std::array<ParsedValue, 4> v;
    for (std::size_t i = 0; i < 4; ++i) {
      v[i] = parse_value(s[i].get<std::string>());
    }
    out.push_back(std::move(v));
  }
  return out;
}

ConclusionKind parse_kind(const std::string& s) {
  if (s == "membership") {
    return ConclusionKind::Membership;
  }
  if (s == "escape") {
    return ConclusionKind::Escape;
  }
  if (s == "no_real_solution") {
    return ConclusionKind::NoRealSolution;
  }
  throw std::invalid_argument("unknown conclusion kind: " + s);
}

const ExactClosure& exact_group(const PolyhedralPair& pair) {
  static std::map<std::string, ExactClosure> cache;
  auto it = cache.find(pair.name);
  if (it == cache.end()) {
    it = cache.emplace(pair.name, finite_closure(std::vector<ExactQuaternion>{pair.ai, pair.ag}, 240)).first;
  }
  return it->second;
}

const FiniteClosure& float_group(const PolyhedralPair& pair) {
  static std::map<std::string, FiniteClosure> cache;
  auto it = cache.find(pair.name);
  if (it == cache.end()) {
    it = cache.emplace(pair.name, finite_closure({pair.ai.to_float(), pair.ag.to_float()}, 240)).first;
  }
  return it->second;
}

bool float_member(const PolyhedralPair& pair, const UnitQuaternion& q, double tol) {
  const auto& elems = float_group(pair).elements;
  return std::any_of(elems.begin(), elems.end(), [&](const UnitQuaternion& e) { return distance(e, q) <= tol; });
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

}  // namespace

std::string to_string(ConclusionKind k) {
  switch (k) {
    case ConclusionKind::Membership:
      return "membership";
    case ConclusionKind::Escape:
      return "escape";
    default:
      return "no_real_solution";
  }
}

const AppendixCase& CaseTable::find(const std::string& id) const {
  for (const auto& c : cases) {
    if (c.id == id) {
      return c;
    }
  }
  throw std::out_of_range("no appendix case named " + id);
}

CaseTable parse_case_table(const std::string& json_text) {
  const json j = json::parse(json_text);
  CaseTable t;
  for (const auto& [name, g] : j.at("groups").items()) {
    PolyhedralPair p;
    p.name = name;
    p.kind = g.at("kind").get<std::string>();
    p.ai = parse_exact_quaternion(g.at("Ai"), name + ".Ai");
    p.ag = parse_exact_quaternion(g.at("Ag"), name + ".Ag");
    t.groups.emplace(name, std::move(p));
  }
  for (const auto& c : j.at("cases")) {
    AppendixCase ac;
    ac.id = c.at("case_id").get<std::string>();
    ac.group = c.at("group").get<std::string>();
    if (t.groups.count(ac.group) == 0) {
      throw std::invalid_argument(ac.id + ": unknown group " + ac.group);
    }
    ac.description = c.value("description", "");
    ac.note = c.value("note", "");
    for (const auto& k : c.at("constraints")) {
      TraceConstraint tc{k.at("word").get<std::string>(), parse_value(k.at("trace").get<std::string>())};
      parse_case_word(tc.word);
      ac.constraints.push_back(std::move(tc));
    }
    ac.claimed_solutions = parse_solutions(c.at("claimed_solutions"));
    if (c.contains("printed_solutions")) {
      ac.printed_solutions = parse_solutions(c.at("printed_solutions"));
    }
    const json& con = c.at("conclusion");
    ac.conclusion.kind = parse_kind(con.at("kind").get<std::string>());
    if (ac.conclusion.kind == ConclusionKind::Escape) {
      ac.conclusion.escape_word = con.at("escape_word").get<std::string>();
      for (const auto& v : con.at("escape_traces")) {
        ac.conclusion.escape_traces.push_back(parse_value(v.get<std::string>()));
      }
      ac.conclusion.handle = {con.at("handle").at(0).get<std::string>(), con.at("handle").at(1).get<std::string>()};
      if (ac.conclusion.escape_traces.size() != ac.claimed_solutions.size()) {
        throw std::invalid_argument(ac.id + ": one escape trace per claimed solution expected");
      }
    }
    t.cases.push_back(std::move(ac));
  }
  return t;
}

CaseTable load_case_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open case table " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_case_table(ss.str());
}

const CaseTable& default_case_table() {
  static const CaseTable t = parse_case_table(embedded_appendix_table());
  return t;
}

RealSolutionSearch search_real_solutions(const PolyhedralPair& pair, const std::vector<TraceConstraint>& constraints,
                                         double resolution, std::size_t max_boxes) {
  std::vector<Compiled> cs;
  for (const auto& c : constraints) {
    cs.push_back(compile(pair, c));
  }
  int levels = 0;
  double width = 2.0;
  while (width > resolution) {
    width *= 0.5;
    ++levels;
  }
  RealSolutionSearch out;
  out.resolution = width;

  std::vector<Box> boxes;
  const Box root{Iv{-1, 1}, Iv{-1, 1}, Iv{-1, 1}, Iv{-1, 1}};
  if (feasible(cs, root, 2.0)) {
    boxes.push_back(root);
  }
  double w = 2.0;
  for (int l = 0; l < levels && !boxes.empty(); ++l) {
    w *= 0.5;
    std::vector<Box> next;
    for (const auto& b : boxes) {
      for (int mask = 0; mask < 16; ++mask) {
        Box child;
        for (int i = 0; i < 4; ++i) {
          const double mid = 0.5 * (b[i].lo + b[i].hi);
          child[i] = ((mask >> i) & 1) != 0 ? Iv{mid, b[i].hi} : Iv{b[i].lo, mid};
        }
        if (feasible(cs, child, w)) {
          next.push_back(child);
        }
      }
      if (next.size() > max_boxes) {
        out.exhausted = true;
        out.surviving_boxes = next.size();
        return out;
      }
    }
    boxes = std::move(next);
  }
  out.surviving_boxes = boxes.size();

  // Connected components on the final grid.
  auto key_of = [&](const std::array<long, 4>& k) {
    return (static_cast<std::uint64_t>(k[0]) << 48) | (static_cast<std::uint64_t>(k[1]) << 32) |
           (static_cast<std::uint64_t>(k[2]) << 16) | static_cast<std::uint64_t>(k[3]);
  };
  std::vector<std::array<long, 4>> idx(boxes.size());
  std::unordered_map<std::uint64_t, std::size_t> where;
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    for (int i = 0; i < 4; ++i) {
      idx[b][i] = std::lround((boxes[b][i].lo + 1.0) / w) + 1;
    }
    where.emplace(key_of(idx[b]), b);
  }
  DisjointSets ds(boxes.size());
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    for (int off = 0; off < 81; ++off) {
      std::array<long, 4> n = idx[b];
      int o = off;
      for (int i = 0; i < 4; ++i) {
        n[i] += (o % 3) - 1;
        o /= 3;
      }
      auto it = where.find(key_of(n));
      if (it != where.end()) {
        ds.unite(b, it->second);
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> comps;
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    comps[ds.find(b)].push_back(b);
  }
  for (const auto& [root_id, members] : comps) {
    std::array<double, 4> lo{1e9, 1e9, 1e9, 1e9};
    std::array<double, 4> hi{-1e9, -1e9, -1e9, -1e9};
    std::array<double, 4> c{0, 0, 0, 0};
    for (auto b : members) {
      for (int i = 0; i < 4; ++i) {
        lo[i] = std::min(lo[i], boxes[b][i].lo);
        hi[i] = std::max(hi[i], boxes[b][i].hi);
        c[i] += 0.5 * (boxes[b][i].lo + boxes[b][i].hi) / static_cast<double>(members.size());
      }
    }
    out.component_lo.push_back(lo);
    out.component_hi.push_back(hi);
    out.component_centers.push_back(c);
  }
  return out;
}

bool handle_escapes(const std::string& kind, const ImageClassification& c) {
  if (c.in_pin2) {
    return false;
  }
  if (kind == "D") {
    return c.kind != "C" && c.kind != "D";
  }
  return c.kind != kind;
}

CaseReport verify_appendix_case(const CaseTable& table, const std::string& case_id) {
  const AppendixCase& ac = table.find(case_id);
  const PolyhedralPair& pair = table.groups.at(ac.group);
  const std::vector<ExactQuaternion> exact_gens{pair.ai, pair.ag};
  CaseReport rep;
  rep.id = ac.id;

  // 1. Claimed solutions satisfy the system.
  bool residual_ok = true;
  bool every_exact = !ac.claimed_solutions.empty();
  for (const auto& sol : ac.claimed_solutions) {
    const bool ex = all_exact(sol) && std::all_of(ac.constraints.begin(), ac.constraints.end(),
                                                  [](const TraceConstraint& t) { return t.value.exact.has_value(); });
    every_exact = every_exact && ex;
    if (ex) {
      const ExactQuaternion q = exact_from(sol);
      std::vector<ExactQuaternion> imgs{pair.ai, pair.ag, q};
      bool ok = q.is_unit();
      for (const auto& tc : ac.constraints) {
        ok = ok && evaluate_word(imgs, parse_case_word(tc.word)).trace() == *tc.value.exact;
      }
      if (!ok) {
        residual_ok = false;
        rep.messages.push_back("exact residual nonzero for a claimed solution");
      }
    } else {
      const UnitQuaternion q = float_from(sol);
      double r = std::abs(q.norm_sq() - 1.0);
      for (const auto& tc : ac.constraints) {
        r = std::max(r, std::abs(trace_at(compile(pair, tc), q) - tc.value.to_double()));
      }
      rep.max_residual = std::max(rep.max_residual, r);
      if (r > 1e-12) {
        residual_ok = false;
        rep.messages.push_back("claimed solution residual " + fmt(r) + " exceeds 1e-12");
      }
    }
  }
  rep.exact_residuals = every_exact;
  for (const auto& sol : ac.printed_solutions) {
    const UnitQuaternion q = float_from(sol);
    double r = std::abs(q.norm_sq() - 1.0);
    for (const auto& tc : ac.constraints) {
      r = std::max(r, std::abs(trace_at(compile(pair, tc), q) - tc.value.to_double()));
    }
    rep.messages.push_back("printed solution residual " + fmt(r) + " (informational)");
  }

  // 2. The real solution set is exactly the claimed set.
  const RealSolutionSearch search = search_real_solutions(pair, ac.constraints);
  rep.real_components = search.component_centers.size();
  if (search.exhausted) {
    rep.messages.push_back("interval search exceeded its box budget");
  }
  auto in_component = [&](std::size_t c, const UnitQuaternion& q) {
    const auto v = q.components();
    for (int i = 0; i < 4; ++i) {
      if (v[i] < search.component_lo[c][i] - search.resolution || v[i] > search.component_hi[c][i] + search.resolution) {
        return false;
      }
    }
    return true;
  };
  bool set_ok = !search.exhausted;
  for (std::size_t c = 0; c < rep.real_components; ++c) {
    const bool hit = std::any_of(ac.claimed_solutions.begin(), ac.claimed_solutions.end(),
                                 [&](const auto& s) { return in_component(c, float_from(s)); });
    if (!hit) {
      set_ok = false;
      const auto& m = search.component_centers[c];
      rep.messages.push_back("unclaimed real solution near (" + fmt(m[0]) + ", " + fmt(m[1]) + ", " + fmt(m[2]) +
                             ", " + fmt(m[3]) + ")");
    }
  }
  for (const auto& s : ac.claimed_solutions) {
    bool hit = false;
    for (std::size_t c = 0; c < rep.real_components && !hit; ++c) {
      hit = in_component(c, float_from(s));
    }
    if (!hit) {
      set_ok = false;
      rep.messages.push_back("claimed solution not found by the interval search");
    }
  }
  rep.solution_set_matches = set_ok;

  // 3. The stated conclusion.
  bool concl = true;
  switch (ac.conclusion.kind) {
    case ConclusionKind::NoRealSolution:
      concl = ac.claimed_solutions.empty() && rep.real_components == 0 && !search.exhausted;
      break;
    case ConclusionKind::Membership:
      for (const auto& s : ac.claimed_solutions) {
        bool member = false;
        if (all_exact(s)) {
          const auto& elems = exact_group(pair).elements;
          member = std::binary_search(elems.begin(), elems.end(), exact_from(s));
        } else {
          member = float_member(pair, float_from(s), 1e-9);
        }
        if (!member) {
          concl = false;
          rep.messages.push_back("claimed solution is not in the group");
        }
      }
      break;
    case ConclusionKind::Escape: {
      const FreeWord esc = parse_case_word(ac.conclusion.escape_word);
      const FreeWord h0 = parse_case_word(ac.conclusion.handle[0]);
      const FreeWord h1 = parse_case_word(ac.conclusion.handle[1]);
      for (std::size_t k = 0; k < ac.claimed_solutions.size(); ++k) {
        const auto& s = ac.claimed_solutions[k];
        const ParsedValue& want = ac.conclusion.escape_traces[k];
        ImageClassification cls;
        if (all_exact(s) && want.exact) {
          std::vector<ExactQuaternion> imgs{pair.ai, pair.ag, exact_from(s)};
          const QFElement t = evaluate_word(imgs, esc).trace();
          rep.escape_traces.push_back(t.to_double());
          if (!(t == *want.exact)) {
            concl = false;
            rep.messages.push_back("escape trace " + t.to_string() + " differs from " + want.text);
          }
          cls = classify_subgroup(std::vector<ExactQuaternion>{evaluate_word(imgs, h0), evaluate_word(imgs, h1)});
        } else {
          std::vector<UnitQuaternion> imgs{pair.ai.to_float(), pair.ag.to_float(), float_from(s).normalized()};
          const double t = evaluate_word(imgs, esc).trace();
          rep.escape_traces.push_back(t);
          if (std::abs(t - want.to_double()) > 1e-12) {
            concl = false;
            rep.messages.push_back("escape trace " + fmt(t) + " differs from " + want.text);
          }
          cls = classify_subgroup({evaluate_word(imgs, h0), evaluate_word(imgs, h1)});
        }
        if (!handle_escapes(pair.kind, cls)) {
          concl = false;
          rep.messages.push_back("escape handle classified as " + cls.kind);
        } else {
          rep.messages.push_back("escape handle classified as " + cls.kind);
        }
      }
      break;
    }
  }
  rep.conclusion_holds = concl;
  rep.passed = residual_ok && set_ok && concl;
  return rep;
}

std::vector<CaseReport> verify_all_cases(const CaseTable& table) {
  std::vector<CaseReport> out;
  for (const auto& c : table.cases) {
    out.push_back(verify_appendix_case(table, c.id));
  }
  return out;
}

std::vector<double> trace_value_set(const std::string& kind) {
  const double r2 = (std::sqrt(5.0) + 1.0) / 2.0;
  const double s2 = (std::sqrt(5.0) - 1.0) / 2.0;
  if (kind == "T") {
    return {0.0, 1.0, -1.0};
  }
  if (kind == "C") {
    return {0.0, 1.0, -1.0, std::sqrt(2.0), -std::sqrt(2.0)};
  }
  if (kind == "D") {
    return {0.0, 1.0, -1.0, r2, -r2, s2, -s2};
  }
  throw std::invalid_argument("unknown group kind " + kind);
}

SiblingSummary enumerate_sibling_cases(const PolyhedralPair& pair) {
  SiblingSummary out;
  out.group = pair.name;
  const UnitQuaternion ai = pair.ai.to_float();
  const UnitQuaternion ag = pair.ag.to_float();
  // tr(M q) = n(M) . q with n(M) = 2 (Mw, -Mx, -My, -Mz).
  auto row = [](const UnitQuaternion& m) { return std::array<double, 4>{2 * m.w, -2 * m.x, -2 * m.y, -2 * m.z}; };
  const std::array<std::array<double, 4>, 3> n{row(ai), row(ai * ag), row(ag)};

  auto det3 = [](const std::array<std::array<double, 3>, 3>& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  // Null direction of the 3x4 system from signed minors.
  std::array<double, 4> d{};
  for (int k = 0; k < 4; ++k) {
    std::array<std::array<double, 3>, 3> m{};
    for (int r = 0; r < 3; ++r) {
      int cc = 0;
      for (int c = 0; c < 4; ++c) {
        if (c != k) {
          m[r][cc++] = n[r][c];
        }
      }
    }
    d[k] = ((k % 2) == 0 ? 1.0 : -1.0) * det3(m);
  }
  const double dn = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3]);
  // Gram matrix N N^T and its inverse.
  std::array<std::array<double, 3>, 3> gm{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      gm[i][j] = n[i][0] * n[j][0] + n[i][1] * n[j][1] + n[i][2] * n[j][2] + n[i][3] * n[j][3];
    }
  }
  const double gd = det3(gm);
  std::array<std::array<double, 3>, 3> ginv{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int i1 = (j + 1) % 3;
      const int i2 = (j + 2) % 3;
      const int j1 = (i + 1) % 3;
      const int j2 = (i + 2) % 3;
      ginv[i][j] = (gm[i1][j1] * gm[i2][j2] - gm[i1][j2] * gm[i2][j1]) / gd;
    }
  }

  const std::vector<double> vals = trace_value_set(pair.kind);
  for (double va : vals) {
    for (double vb : vals) {
      for (double vc : vals) {
        ++out.total;
        const std::string label = pair.name + "(" + fmt(va) + "," + fmt(vb) + "," + fmt(vc) + ")";
        if (dn < 1e-9 || std::abs(gd) < 1e-12) {
          ++out.inconclusive;
          out.inconclusive_cases.push_back(label + ": degenerate linear system");
          continue;
        }
        const std::array<double, 3> v{va, vb, vc};
        std::array<double, 3> y{};
        for (int i = 0; i < 3; ++i) {
          y[i] = ginv[i][0] * v[0] + ginv[i][1] * v[1] + ginv[i][2] * v[2];
        }
        std::array<double, 4> p{};
        for (int c = 0; c < 4; ++c) {
          p[c] = n[0][c] * y[0] + n[1][c] * y[1] + n[2][c] * y[2];
        }
        const double disc = 1.0 - (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
        if (disc < -1e-12) {
          ++out.non_real;
          continue;
        }
        // Tangency: roundoff in disc would otherwise move the point by sqrt(eps).
        const double t = disc <= 1e-12 ? 0.0 : std::sqrt(disc);
        std::vector<UnitQuaternion> sols;
        for (double sgn : {1.0, -1.0}) {
          sols.push_back(UnitQuaternion{p[0] + sgn * t * d[0] / dn, p[1] + sgn * t * d[1] / dn,
                                        p[2] + sgn * t * d[2] / dn, p[3] + sgn * t * d[3] / dn}
                             .normalized());
          if (t == 0.0) {
            break;
          }
        }
        bool all_member = true;
        bool unresolved = false;
        for (const auto& q : sols) {
          if (float_member(pair, q, 1e-9)) {
            continue;
          }
          all_member = false;
          try {
            const ImageClassification c = classify_subgroup({ai, ag * ai * q});
            if (!handle_escapes(pair.kind, c)) {
              unresolved = true;
              out.inconclusive_cases.push_back(label + ": escape handle is " + c.kind);
            }
          } catch (const ClusteringAmbiguity& e) {
            unresolved = true;
            out.inconclusive_cases.push_back(label + ": " + e.what());
          }
        }
        if (unresolved) {
          ++out.inconclusive;
        } else if (all_member) {
          ++out.membership;
        } else {
          ++out.escape;
        }
      }
    }
  }
  return out;
}

}  // namespace su2twist
