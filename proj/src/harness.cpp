#include "treetopo/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

namespace treetopo {

// ---- random stream ---------------------------------------------------------

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("empty sampling range");
  std::uint64_t bound = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= bound);
  return v % n;
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("empty sampling range");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool Rng::chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

// ---- generation ------------------------------------------------------------

namespace {

BigInt rat_floor(const Rat& r) {
  BigInt q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

BigInt rat_ceil(const Rat& r) { return -rat_floor(Rat(-r)); }

Rat random_length(const GeneratorConfig& cfg, Rng& rng) {
  std::int64_t den = rng.range(1, cfg.max_denominator);
  BigInt lo_big = rat_ceil(cfg.min_edge_length * den);
  BigInt hi_big = rat_floor(cfg.max_edge_length * den);
  if (lo_big < 1) lo_big = 1;
  auto lo = lo_big.convert_to<std::int64_t>();
  auto hi = hi_big.convert_to<std::int64_t>();
  if (lo > hi) throw std::invalid_argument("edge-length range admits no rational with this denominator");
  return Rat(rng.range(lo, hi), den);
}

}  // namespace

std::shared_ptr<const TreeSkeleton> generate_skeleton(const GeneratorConfig& cfg, Rng& rng) {
  if (cfg.min_vertices < 1 || cfg.min_vertices > cfg.max_vertices)
    throw std::invalid_argument("bad vertex-count range");
  int n = static_cast<int>(rng.range(cfg.min_vertices, cfg.max_vertices));
  TreeSkeleton::Spec spec;
  for (int i = 0; i < n; ++i) spec.vertex_names.push_back("v" + std::to_string(i));
  for (int i = 1; i < n; ++i) {
    int parent = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
    spec.edges.push_back({spec.vertex_names[parent], spec.vertex_names[i], random_length(cfg, rng)});
  }
  spec.root_name = spec.vertex_names[rng.below(static_cast<std::uint64_t>(n))];
  return TreeSkeleton::build(spec);
}

std::shared_ptr<const TreeSkeleton> generate_skeleton(const GeneratorConfig& cfg) {
  Rng rng(cfg.seed);
  return generate_skeleton(cfg, rng);
}

Point random_point(const TreeSkeleton& skel, Rng& rng, int max_denominator) {
  if (skel.edge_count() == 0 || rng.chance(2, 5))
    return skel.vertex_point(static_cast<VertexId>(rng.below(skel.vertex_count())));
  EdgeId e = static_cast<EdgeId>(rng.below(skel.edge_count()));
  std::int64_t den = rng.range(1, max_denominator);
  BigInt hi = rat_floor(skel.edge(e).length * den);
  std::int64_t k = rng.range(0, hi.convert_to<std::int64_t>());
  return skel.point_at_offset(e, Rat(k, den));
}

// ---- record codec ----------------------------------------------------------

namespace {

using Fields = std::vector<std::pair<std::string, std::string>>;

struct FieldMap {
  const Fields& fields;

  bool has(std::string_view key) const {
    for (const auto& [k, v] : fields)
      if (k == key) return true;
    return false;
  }

  const std::string& get(std::string_view key) const {
    for (const auto& [k, v] : fields)
      if (k == key) return v;
    throw RecordError("record is missing field '" + std::string(key) + "'");
  }
};

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    auto at = text.find(sep);
    out.push_back(text.substr(0, at));
    if (at == std::string_view::npos) break;
    text = text.substr(at + 1);
  }
  return out;
}

}  // namespace

std::string CaseRecord::to_line() const {
  std::string out = "property=" + property + " index=" + std::to_string(index) +
                    " verdict=" + (pass ? "pass" : "fail");
  for (const auto& [k, v] : fields) out += " " + k + "=" + v;
  return out;
}

CaseRecord CaseRecord::parse(std::string_view line) {
  CaseRecord rec;
  bool saw_property = false, saw_index = false, saw_verdict = false;
  for (std::string_view token : split(line, ' ')) {
    if (token.empty()) continue;
    auto eq = token.find('=');
    if (eq == std::string_view::npos)
      throw RecordError("malformed record token '" + std::string(token) + "'");
    std::string_view key = token.substr(0, eq);
    std::string_view value = token.substr(eq + 1);
    if (key == "property") {
      rec.property = std::string(value);
      saw_property = true;
    } else if (key == "index") {
      rec.index = std::strtoull(std::string(value).c_str(), nullptr, 10);
      saw_index = true;
    } else if (key == "verdict") {
      if (value != "pass" && value != "fail")
        throw RecordError("verdict must be pass or fail, got '" + std::string(value) + "'");
      rec.pass = value == "pass";
      saw_verdict = true;
    } else {
      rec.fields.emplace_back(std::string(key), std::string(value));
    }
  }
  if (!saw_property || !saw_index || !saw_verdict)
    throw RecordError("truncated record: property, index and verdict are required");
  return rec;
}

std::string PropertyReport::to_text() const {
  char elapsed[64];
  std::snprintf(elapsed, sizeof elapsed, "%.17g", elapsed_seconds);
  std::string out = "property=" + property + " cases=" + std::to_string(cases_run) +
                    " vacuous=" + std::to_string(vacuous_cases) +
                    " failures=" + std::to_string(failures.size()) + " elapsed=" + elapsed + "\n";
  for (const CaseRecord& rec : failures) out += rec.to_line() + "\n";
  return out;
}

PropertyReport PropertyReport::parse(std::string_view text) {
  auto lines = split(text, '\n');
  if (lines.empty()) throw RecordError("empty report");
  PropertyReport rep;
  std::uint64_t declared_failures = 0;
  bool saw_property = false;
  for (std::string_view token : split(lines[0], ' ')) {
    if (token.empty()) continue;
    auto eq = token.find('=');
    if (eq == std::string_view::npos) throw RecordError("malformed report token '" + std::string(token) + "'");
    std::string key(token.substr(0, eq));
    std::string value(token.substr(eq + 1));
    if (key == "property") {
      rep.property = value;
      saw_property = true;
    } else if (key == "cases") {
      rep.cases_run = std::strtoull(value.c_str(), nullptr, 10);
    } else if (key == "vacuous") {
      rep.vacuous_cases = std::strtoull(value.c_str(), nullptr, 10);
    } else if (key == "failures") {
      declared_failures = std::strtoull(value.c_str(), nullptr, 10);
    } else if (key == "elapsed") {
      rep.elapsed_seconds = std::strtod(value.c_str(), nullptr);
    } else {
      throw RecordError("unknown report field '" + key + "'");
    }
  }
  if (!saw_property) throw RecordError("report summary is missing the property name");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    rep.failures.push_back(CaseRecord::parse(lines[i]));
  }
  if (rep.failures.size() != declared_failures) throw RecordError("report failure count mismatch");
  return rep;
}

// ---- chain family ----------------------------------------------------------

namespace {

std::vector<Point> region_cut_set(const Region& region, const OrderView& view) {
  std::vector<Point> anchors;
  region.collect_anchors(anchors);
  anchors.push_back(region.view().base);
  anchors.push_back(view.base);
  return canonical_cut_points(*view.skeleton, anchors);
}

// Whether p is a breakpoint of the decomposition (vertex, anchor or base) as
// opposed to an inserted midpoint sample. Midpoints are exactly the cut
// points that are not breakpoints; a chain limit must be a breakpoint, since
// a sequence climbing toward a midpoint stays in the midpoint's own piece.
bool is_breakpoint(const TreeSkeleton& skel, const std::vector<Point>& anchors, const Point& p) {
  if (p.is_vertex()) return true;
  return std::find(anchors.begin(), anchors.end(), p) != anchors.end();
}

}  // namespace

std::vector<DirectedChain> chain_family(const Region& region, const OrderView& view,
                                        int max_points, std::size_t budget) {
  if (max_points < 2) throw std::invalid_argument("chain family needs room for at least two points");
  const TreeSkeleton& skel = *view.skeleton;
  std::vector<Point> anchors;
  region.collect_anchors(anchors);
  anchors.push_back(region.view().base);
  anchors.push_back(view.base);
  std::vector<Point> cuts = canonical_cut_points(skel, anchors);

  std::vector<DirectedChain> family;
  std::set<std::pair<std::vector<Point>, std::optional<Point>>> seen;
  auto emit = [&](std::vector<Point> elements, std::optional<Point> limit) {
    if (elements.empty()) return;
    if (seen.emplace(elements, limit).second)
      family.push_back(DirectedChain{std::move(elements), std::move(limit)});
  };

  for (VertexId leaf = 0; leaf < skel.vertex_count(); ++leaf) {
    if (skel.incident_edges(leaf).size() > 1) continue;
    Point tip = skel.vertex_point(leaf);
    if (tip == view.base) continue;
    PathRepr path = path_between(skel, view.base, tip);

    // Cut points on the path, ordered from the base outward.
    std::vector<Point> line;
    for (const Point& c : cuts)
      if (point_on_segment(skel, c, path)) line.push_back(c);
    std::sort(line.begin(), line.end(), [&](const Point& x, const Point& y) {
      return skel.distance(view.base, x) < skel.distance(view.base, y);
    });

    // Unattained variants: for every breakpoint L above the base, the run of
    // cuts just below it with limit L. These are the discriminating chains.
    for (std::size_t i = 1; i < line.size(); ++i) {
      if (!is_breakpoint(skel, anchors, line[i])) continue;
      for (std::size_t len = 1; len + 1 <= static_cast<std::size_t>(max_points) && len <= i; ++len)
        emit(std::vector<Point>(line.begin() + (i - len), line.begin() + i), line[i]);
    }

    // Attained variants: consecutive runs and all pairs, until the budget is
    // spent. These always contain their own supremum.
    for (std::size_t i = 0; i < line.size() && family.size() < budget; ++i) {
      for (std::size_t len = 1; len <= static_cast<std::size_t>(max_points) && i + len <= line.size(); ++len)
        emit(std::vector<Point>(line.begin() + i, line.begin() + (i + len)), std::nullopt);
    }
    for (std::size_t i = 0; i < line.size() && family.size() < budget; ++i) {
      for (std::size_t j = i + 1; j < line.size(); ++j) emit({line[i], line[j]}, std::nullopt);
    }
  }
  return family;
}

// ---- property registry -----------------------------------------------------

namespace {

void put(Fields& out, const char* key, std::string value) { out.emplace_back(key, std::move(value)); }

void put_point(Fields& out, const TreeSkeleton& skel, const char* key, const Point& p) {
  out.emplace_back(key, skel.point_name(p));
}

std::shared_ptr<const TreeSkeleton> gen_tree(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = generate_skeleton(cfg, rng);
  put(out, "tree", skel->to_compact());
  return skel;
}

std::optional<Point> distinct_point(const TreeSkeleton& skel, Rng& rng, const GeneratorConfig& cfg,
                                    const Point& avoid) {
  for (int i = 0; i < 64; ++i) {
    Point p = random_point(skel, rng, cfg.max_denominator);
    if (p != avoid) return p;
  }
  return std::nullopt;
}

std::shared_ptr<const TreeSkeleton> get_tree(const FieldMap& f) { return parse_tree_compact(f.get("tree")); }

Point get_point(const FieldMap& f, const TreeSkeleton& skel, const char* key) {
  return skel.parse_point(f.get(key));
}

std::vector<Point> get_points(const FieldMap& f, const TreeSkeleton& skel, const char* key) {
  std::vector<Point> out;
  for (std::string_view item : split(f.get(key), ';')) out.push_back(skel.parse_point(item));
  return out;
}

std::string join_points(const TreeSkeleton& skel, const std::vector<Point>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ';';
    out += skel.point_name(pts[i]);
  }
  return out;
}

bool is_vacuous(const FieldMap& f) { return f.has("vacuous"); }

void mark_vacuous(Fields& out) { put(out, "vacuous", "1"); }

std::vector<Point> cuts_with(const TreeSkeleton& skel, std::vector<Point> extra) {
  return canonical_cut_points(skel, extra);
}

// Fraction k/8 of the way along the path from `from` to `to`.
Point along_fraction(const TreeSkeleton& skel, const Point& from, const Point& to, std::int64_t k) {
  PathRepr path = path_between(skel, from, to);
  return point_along(skel, path, path.length() * k / 8);
}

// --- tree-core properties ---

void gen_tree_base_ab(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  put_point(out, *skel, "base", random_point(*skel, rng, cfg.max_denominator));
  put_point(out, *skel, "a", random_point(*skel, rng, cfg.max_denominator));
  put_point(out, *skel, "b", random_point(*skel, rng, cfg.max_denominator));
}

bool check_meet_glb(const FieldMap& f) {
  auto skel = get_tree(f);
  OrderView view = reroot(skel, get_point(f, *skel, "base"));
  Point a = get_point(f, *skel, "a");
  Point b = get_point(f, *skel, "b");
  Point m = meet(view, a, b);
  if (!leq(view, m, a) || !leq(view, m, b)) return false;
  for (const Point& c : cuts_with(*skel, {view.base, a, b, m})) {
    if (leq(view, c, a) && leq(view, c, b) && !leq(view, c, m)) return false;
  }
  return true;
}

void gen_infimum(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  put_point(out, *skel, "base", random_point(*skel, rng, cfg.max_denominator));
  std::vector<Point> pts;
  int k = static_cast<int>(rng.range(3, 4));
  for (int i = 0; i < k; ++i) pts.push_back(random_point(*skel, rng, cfg.max_denominator));
  put(out, "points", join_points(*skel, pts));
}

bool check_infimum(const FieldMap& f) {
  auto skel = get_tree(f);
  OrderView view = reroot(skel, get_point(f, *skel, "base"));
  std::vector<Point> pts = get_points(f, *skel, "points");
  if (pts.size() < 3) throw RecordError("points field needs at least three entries");
  Point expected = infimum(view, pts);

  if (meet(view, pts[0], pts[1]) != meet(view, pts[1], pts[0])) return false;
  if (pts.size() >= 3) {
    Point left = meet(view, meet(view, pts[0], pts[1]), pts[2]);
    Point right = meet(view, pts[0], meet(view, pts[1], pts[2]));
    if (left != right) return false;
  }

  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  do {
    std::vector<Point> shuffled;
    for (std::size_t i : order) shuffled.push_back(pts[i]);
    if (infimum(view, shuffled) != expected) return false;
  } while (std::next_permutation(order.begin(), order.end()));
  return true;
}

void gen_tree_abc(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  put_point(out, *skel, "a", random_point(*skel, rng, cfg.max_denominator));
  put_point(out, *skel, "b", random_point(*skel, rng, cfg.max_denominator));
  put_point(out, *skel, "c", random_point(*skel, rng, cfg.max_denominator));
}

bool check_segment_triangle(const FieldMap& f) {
  auto skel = get_tree(f);
  Point a = get_point(f, *skel, "a");
  Point b = get_point(f, *skel, "b");
  Point c = get_point(f, *skel, "c");
  PathRepr ab = path_between(*skel, a, b);
  PathRepr bc = path_between(*skel, b, c);
  PathRepr ac = path_between(*skel, a, c);
  for (const Point& x : cuts_with(*skel, {a, b, c})) {
    if (point_on_segment(*skel, x, ac) &&
        !(point_on_segment(*skel, x, ab) || point_on_segment(*skel, x, bc)))
      return false;
  }
  return true;
}

void gen_segment_bases(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  put_point(out, *skel, "a", random_point(*skel, rng, cfg.max_denominator));
  put_point(out, *skel, "b", random_point(*skel, rng, cfg.max_denominator));
  std::vector<Point> bases{skel->vertex_point(skel->root())};
  bases.push_back(random_point(*skel, rng, cfg.max_denominator));
  bases.push_back(random_point(*skel, rng, cfg.max_denominator));
  put(out, "bases", join_points(*skel, bases));
}

bool check_segment_base_invariance(const FieldMap& f) {
  auto skel = get_tree(f);
  Point a = get_point(f, *skel, "a");
  Point b = get_point(f, *skel, "b");
  PathRepr path = path_between(*skel, a, b);
  for (const Point& base : get_points(f, *skel, "bases")) {
    OrderView view = reroot(skel, base);
    Point m = meet(view, a, b);
    for (const Point& x : cuts_with(*skel, {a, b, base, m})) {
      bool by_order = leq(view, m, x) && (leq(view, x, a) || leq(view, x, b));
      if (by_order != point_on_segment(*skel, x, path)) return false;
    }
  }
  return true;
}

void gen_tree_t(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  put_point(out, *skel, "t", random_point(*skel, rng, cfg.max_denominator));
}

bool check_rebased_minimum(const FieldMap& f) {
  auto skel = get_tree(f);
  Point t = get_point(f, *skel, "t");
  OrderView view = reroot(skel, t);
  for (const Point& x : cuts_with(*skel, {t})) {
    if (!leq(view, t, x)) return false;
  }
  return true;
}

void gen_comparable_pair(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  Point base = random_point(*skel, rng, cfg.max_denominator);
  Point c = random_point(*skel, rng, cfg.max_denominator);
  Point b = along_fraction(*skel, base, c, rng.range(0, 8));
  Point a = along_fraction(*skel, base, b, rng.range(0, 8));
  put_point(out, *skel, "base", base);
  put_point(out, *skel, "a", a);
  put_point(out, *skel, "b", b);
}

bool check_segment_total_order(const FieldMap& f) {
  auto skel = get_tree(f);
  OrderView view = reroot(skel, get_point(f, *skel, "base"));
  Point a = get_point(f, *skel, "a");
  Point b = get_point(f, *skel, "b");
  if (!leq(view, a, b)) return true;  // the claim quantifies over comparable pairs
  PathRepr path = path_between(*skel, a, b);
  std::vector<Point> on;
  for (const Point& x : cuts_with(*skel, {view.base, a, b})) {
    if (point_on_segment(*skel, x, path)) on.push_back(x);
  }
  for (const Point& x : on) {
    for (const Point& y : on) {
      if (!leq(view, x, y) && !leq(view, y, x)) return false;
    }
  }
  return true;
}

// --- tangent-space properties ---

bool check_tangent_equivalence(const FieldMap& f) {
  auto skel = get_tree(f);
  Point t = get_point(f, *skel, "t");
  std::vector<Point> pts;
  for (const Point& x : cuts_with(*skel, {t})) {
    if (x != t) pts.push_back(x);
  }
  if (pts.size() > 12) {  // keep the cubic transitivity scan bounded
    std::vector<Point> thin;
    std::size_t step = (pts.size() + 11) / 12;
    for (std::size_t i = 0; i < pts.size(); i += step) thin.push_back(pts[i]);
    pts.swap(thin);
  }
  for (const Point& x : pts) {
    if (!same_class(*skel, x, x, t)) return false;
  }
  for (const Point& x : pts) {
    for (const Point& y : pts) {
      if (same_class(*skel, x, y, t) != same_class(*skel, y, x, t)) return false;
    }
  }
  for (const Point& x : pts) {
    for (const Point& y : pts) {
      if (!same_class(*skel, x, y, t)) continue;
      for (const Point& z : pts) {
        if (same_class(*skel, y, z, t) && !same_class(*skel, x, z, t)) return false;
      }
    }
  }
  return true;
}

bool check_tangent_partition(const FieldMap& f) {
  auto skel = get_tree(f);
  Point t = get_point(f, *skel, "t");
  TangentSpace space = tangent_space(*skel, t);
  std::size_t expected = t.is_interior() ? 2 : skel->incident_edges(t.vertex_id()).size();
  if (space.classes.size() != expected) return false;
  for (const TangentClassAtom& atom : space.classes) {
    if (atom.contains(*skel, t)) return false;
    if (!atom.contains(*skel, atom.representative())) return false;
  }
  for (const Point& x : cuts_with(*skel, {t})) {
    if (x == t) continue;
    std::size_t hits = 0;
    for (const TangentClassAtom& atom : space.classes) {
      if (atom.contains(*skel, x)) ++hits;
    }
    if (hits != 1) return false;
  }
  return true;
}

void gen_tangent_pair_bases(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  Point t = random_point(*skel, rng, cfg.max_denominator);
  auto a = distinct_point(*skel, rng, cfg, t);
  auto b = distinct_point(*skel, rng, cfg, t);
  if (!a || !b) {
    mark_vacuous(out);
    return;
  }
  put_point(out, *skel, "t", t);
  put_point(out, *skel, "a", *a);
  put_point(out, *skel, "b", *b);
  std::vector<Point> bases{skel->vertex_point(skel->root()),
                           random_point(*skel, rng, cfg.max_denominator),
                           random_point(*skel, rng, cfg.max_denominator)};
  put(out, "bases", join_points(*skel, bases));
}

bool check_tangent_base_agnostic(const FieldMap& f) {
  if (is_vacuous(f)) return true;
  auto skel = get_tree(f);
  Point t = get_point(f, *skel, "t");
  Point a = get_point(f, *skel, "a");
  Point b = get_point(f, *skel, "b");
  bool expected = same_class(*skel, a, b, t);
  for (const Point& base : get_points(f, *skel, "bases")) {
    OrderView view = reroot(skel, base);
    Point m = meet(view, a, b);
    bool t_on_segment = leq(view, m, t) && (leq(view, t, a) || leq(view, t, b));
    if (expected != !t_on_segment) return false;
  }
  return true;
}

void gen_tangent_pair(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  Point t = random_point(*skel, rng, cfg.max_denominator);
  auto a = distinct_point(*skel, rng, cfg, t);
  auto b = distinct_point(*skel, rng, cfg, t);
  if (!a || !b) {
    mark_vacuous(out);
    return;
  }
  put_point(out, *skel, "t", t);
  put_point(out, *skel, "a", *a);
  put_point(out, *skel, "b", *b);
}

bool check_tangent_class_equality(const FieldMap& f) {
  if (is_vacuous(f)) return true;
  auto skel = get_tree(f);
  Point t = get_point(f, *skel, "t");
  Point a = get_point(f, *skel, "a");
  Point b = get_point(f, *skel, "b");
  TangentClassAtom ca = tangent_class(*skel, a, t);
  TangentClassAtom cb = tangent_class(*skel, b, t);
  bool rel = same_class(*skel, a, b, t);
  if (rel != (ca == cb)) return false;
  if (rel != cb.contains(*skel, a)) return false;
  for (const Point& x : cuts_with(*skel, {t, a, b})) {
    if (ca.contains(*skel, x) != cb.contains(*skel, x) && rel) return false;
  }
  if (!rel) {
    bool differ = false;
    for (const Point& x : cuts_with(*skel, {t, a, b})) {
      if (ca.contains(*skel, x) != cb.contains(*skel, x)) {
        differ = true;
        break;
      }
    }
    if (!differ) return false;
  }
  return true;
}

// --- metric properties ---

void gen_tree_base_abc(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  put_point(out, *skel, "base", random_point(*skel, rng, cfg.max_denominator));
  put_point(out, *skel, "a", random_point(*skel, rng, cfg.max_denominator));
  put_point(out, *skel, "b", random_point(*skel, rng, cfg.max_denominator));
  put_point(out, *skel, "c", random_point(*skel, rng, cfg.max_denominator));
}

bool check_metric_axioms(const FieldMap& f) {
  auto skel = get_tree(f);
  OrderView view = reroot(skel, get_point(f, *skel, "base"));
  Parametrization par(view);
  Point a = get_point(f, *skel, "a");
  Point b = get_point(f, *skel, "b");
  Point c = get_point(f, *skel, "c");
  if (par.distance(a, a) != 0) return false;
  Rat ab = par.distance(a, b);
  if ((ab == 0) != (a == b)) return false;
  if (ab != par.distance(b, a)) return false;
  if (par.distance(a, c) > ab + par.distance(b, c)) return false;
  return true;
}

bool check_metric_meet_additivity(const FieldMap& f) {
  auto skel = get_tree(f);
  OrderView view = reroot(skel, get_point(f, *skel, "base"));
  Parametrization par(view);
  Point a = get_point(f, *skel, "a");
  Point b = get_point(f, *skel, "b");
  Point m = meet(view, a, b);
  return par.distance(a, b) == par.distance(a, m) + par.distance(m, b);
}

void gen_metric_chain(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  gen_comparable_pair(cfg, rng, out);  // base, a, b with a below b
}

bool check_metric_monotone(const FieldMap& f) {
  auto skel = get_tree(f);
  OrderView view = reroot(skel, get_point(f, *skel, "base"));
  Point a = get_point(f, *skel, "a");
  Point b = get_point(f, *skel, "b");
  if (!leq(view, a, b)) return true;
  Parametrization par(view);
  // With a below b below c on one chain, both nested distances shrink.
  Point c = b;
  for (const Point& x : cuts_with(*skel, {view.base, a, b})) {
    if (leq(view, b, x) && leq(view, c, x)) c = x;  // climb to a deep point above b
  }
  if (par.distance(b, c) > par.distance(a, c)) return false;
  if (par.distance(a, b) > par.distance(a, c)) return false;
  return true;
}

void gen_metric_ball(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  put_point(out, *skel, "base", random_point(*skel, rng, cfg.max_denominator));
  Point t = random_point(*skel, rng, cfg.max_denominator);
  auto p = distinct_point(*skel, rng, cfg, t);
  if (!p) {
    mark_vacuous(out);
    return;
  }
  put_point(out, *skel, "t", t);
  put_point(out, *skel, "p", *p);
}

bool check_metric_ball(const FieldMap& f) {
  if (is_vacuous(f)) return true;
  auto skel = get_tree(f);
  OrderView view = reroot(skel, get_point(f, *skel, "base"));
  Parametrization par(view);
  Point t = get_point(f, *skel, "t");
  Point p = get_point(f, *skel, "p");
  TangentClassAtom atom = tangent_class(*skel, p, t);
  Rat eps = epsilon_witness(par, p, atom);
  if (eps <= 0) return false;
  for (const Point& x : cuts_with(*skel, {t, p, view.base})) {
    if (par.distance(p, x) < eps && !atom.contains(*skel, x)) return false;
  }
  return true;
}

// --- topology properties ---

Region random_region(const OrderView& view, Rng& rng, const GeneratorConfig& cfg, int depth) {
  const TreeSkeleton& skel = *view.skeleton;
  if (depth == 0 || rng.chance(2, 5)) {
    switch (rng.below(8)) {
      case 0:
      case 1: {
        Point t = random_point(skel, rng, cfg.max_denominator);
        auto a = distinct_point(skel, rng, cfg, t);
        if (a) return Region::tangent_atom(view, tangent_class(skel, *a, t));
        return Region::whole(view);
      }
      case 2:
      case 3:
        return Region::up_set(view, random_point(skel, rng, cfg.max_denominator));
      case 4:
      case 5:
        return Region::strict_up_set(view, random_point(skel, rng, cfg.max_denominator));
      case 6:
        return Region::singleton(view, random_point(skel, rng, cfg.max_denominator));
      default:
        return rng.chance(1, 2) ? Region::whole(view) : Region::empty(view);
    }
  }
  switch (rng.below(3)) {
    case 0:
      return Region::union_of(random_region(view, rng, cfg, depth - 1), random_region(view, rng, cfg, depth - 1));
    case 1:
      return Region::intersection_of(random_region(view, rng, cfg, depth - 1),
                                     random_region(view, rng, cfg, depth - 1));
    default:
      return Region::complement_of(random_region(view, rng, cfg, depth - 1));
  }
}

void gen_region_case(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  Point base = random_point(*skel, rng, cfg.max_denominator);
  put_point(out, *skel, "base", base);
  Region region = random_region(reroot(skel, base), rng, cfg, 2);
  put(out, "region", region.to_string());
}

bool check_scott_decider_agreement(const FieldMap& f) {
  auto skel = get_tree(f);
  OrderView view = reroot(skel, get_point(f, *skel, "base"));
  Region region = parse_region(view, f.get("region"));
  std::vector<DirectedChain> chains = chain_family(region, view);
  bool direct = is_scott_open(region, view);
  bool composed = is_upper_set(region, view) && is_inaccessible_by_directed_joins(region, view, chains);
  return direct == composed;
}

void gen_class_with_base(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  put_point(out, *skel, "base", random_point(*skel, rng, cfg.max_denominator));
  Point t = random_point(*skel, rng, cfg.max_denominator);
  auto a = distinct_point(*skel, rng, cfg, t);
  if (!a) {
    mark_vacuous(out);
    return;
  }
  put_point(out, *skel, "t", t);
  put_point(out, *skel, "a", *a);
}

bool check_class_inaccessible(const FieldMap& f) {
  if (is_vacuous(f)) return true;
  auto skel = get_tree(f);
  OrderView view = reroot(skel, get_point(f, *skel, "base"));
  Region region = Region::tangent_atom(view, tangent_class(*skel, get_point(f, *skel, "a"),
                                                           get_point(f, *skel, "t")));
  std::vector<DirectedChain> chains = chain_family(region, view);
  return is_inaccessible_by_directed_joins(region, view, chains);
}

void gen_class_pair(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  Point t = random_point(*skel, rng, cfg.max_denominator);
  auto a = distinct_point(*skel, rng, cfg, t);
  if (!a) {
    mark_vacuous(out);
    return;
  }
  put_point(out, *skel, "t", t);
  put_point(out, *skel, "a", *a);
}

bool check_class_upper_at_anchor(const FieldMap& f) {
  if (is_vacuous(f)) return true;
  auto skel = get_tree(f);
  Point t = get_point(f, *skel, "t");
  Point a = get_point(f, *skel, "a");
  OrderView view = reroot(skel, t);
  Region region = Region::tangent_atom(view, tangent_class(*skel, a, t));
  return is_upper_set(region, view);
}

void gen_class_with_probe(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  Point t = random_point(*skel, rng, cfg.max_denominator);
  auto a = distinct_point(*skel, rng, cfg, t);
  if (!a) {
    mark_vacuous(out);
    return;
  }
  put_point(out, *skel, "t", t);
  put_point(out, *skel, "a", *a);
  put_point(out, *skel, "r", random_point(*skel, rng, cfg.max_denominator));
}

bool check_class_upper_characterization(const FieldMap& f) {
  if (is_vacuous(f)) return true;
  auto skel = get_tree(f);
  Point t = get_point(f, *skel, "t");
  Point a = get_point(f, *skel, "a");
  OrderView view = reroot(skel, get_point(f, *skel, "r"));
  Region region = Region::tangent_atom(view, tangent_class(*skel, a, t));
  return is_upper_set(region, view) == lt(view, t, a);
}

// Builds region families that are Scott-open by construction.
void gen_scott_open_region(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  Point base = random_point(*skel, rng, cfg.max_denominator);
  put_point(out, *skel, "base", base);
  OrderView view = reroot(skel, base);

  auto piece = [&]() -> Region {
    switch (rng.below(4)) {
      case 0:
        return Region::strict_up_set(view, random_point(*skel, rng, cfg.max_denominator));
      case 1:
        return Region::up_set(view, base);
      case 2: {
        auto a = distinct_point(*skel, rng, cfg, base);
        if (a) return Region::tangent_atom(view, tangent_class(*skel, *a, base));
        return Region::up_set(view, base);
      }
      default:
        return Region::strict_up_set(view, base);
    }
  };
  Region region = piece();
  if (rng.chance(1, 2)) region = Region::union_of(region, piece());
  put(out, "region", region.to_string());
}

bool check_weak_witness(const FieldMap& f) {
  auto skel = get_tree(f);
  if (skel->vertex_count() == 1) return true;  // no second point can anchor a class
  OrderView view = reroot(skel, get_point(f, *skel, "base"));
  Region region = parse_region(view, f.get("region"));
  if (!is_scott_open(region, view)) return false;  // family is open by construction
  for (const Point& a : cut_points(region)) {
    if (!region.contains(a)) continue;
    Point t = weak_open_witness(region, a, view);
    if (a == view.base) {
      if (t == a) return false;
    } else {
      if (!lt(view, t, a) || !region.contains(t)) return false;
    }
  }
  return true;
}

void gen_tree_only(const GeneratorConfig& cfg, Rng& rng, Fields& out) { gen_tree(cfg, rng, out); }

bool check_root_class_closed(const FieldMap& f) {
  auto skel = get_tree(f);
  OrderView view = root_view(skel);
  Point root = view.base;
  for (VertexId t = 0; t < skel->vertex_count(); ++t) {
    if (t == skel->root()) continue;
    Region region = Region::tangent_atom(view, tangent_class(*skel, root, skel->vertex_point(t)));
    if (is_upper_set(region, view)) return false;
    if (is_scott_open(region, view)) return false;
  }
  return true;
}

bool check_class_scott_open_at_anchor(const FieldMap& f) {
  if (is_vacuous(f)) return true;
  auto skel = get_tree(f);
  Point t = get_point(f, *skel, "t");
  Point a = get_point(f, *skel, "a");
  OrderView view = reroot(skel, t);
  Region region = Region::tangent_atom(view, tangent_class(*skel, a, t));
  if (!is_upper_set(region, view)) return false;
  if (!is_inaccessible_by_directed_joins(region, view, chain_family(region, view))) return false;
  return is_scott_open(region, view);
}

void gen_point_pair(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  Point p = random_point(*skel, rng, cfg.max_denominator);
  auto q = distinct_point(*skel, rng, cfg, p);
  if (!q) {
    mark_vacuous(out);
    return;
  }
  put_point(out, *skel, "p", p);
  put_point(out, *skel, "q", *q);
}

bool check_hausdorff_separation(const FieldMap& f) {
  if (is_vacuous(f)) return true;
  auto skel = get_tree(f);
  Point p = get_point(f, *skel, "p");
  Point q = get_point(f, *skel, "q");
  auto [rp, rq] = hausdorff_witness(skel, p, q);
  if (!rp.contains(p) || !rq.contains(q)) return false;
  std::vector<Point> anchors{p, q};
  rp.collect_anchors(anchors);
  rq.collect_anchors(anchors);
  for (const Point& x : cuts_with(*skel, anchors)) {
    if (rp.contains(x) && rq.contains(x)) return false;
  }
  return true;
}

void gen_vertex_pair(const GeneratorConfig& cfg, Rng& rng, Fields& out) {
  auto skel = gen_tree(cfg, rng, out);
  if (skel->vertex_count() < 2) {
    mark_vacuous(out);
    return;
  }
  VertexId t = static_cast<VertexId>(rng.below(skel->vertex_count()));
  VertexId s = t;
  while (s == t) s = static_cast<VertexId>(rng.below(skel->vertex_count()));
  put_point(out, *skel, "t", skel->vertex_point(t));
  put_point(out, *skel, "s", skel->vertex_point(s));
}

bool check_topology_depends_on_base(const FieldMap& f) {
  if (is_vacuous(f)) return true;
  auto skel = get_tree(f);
  Point t = get_point(f, *skel, "t");
  Point s = get_point(f, *skel, "s");
  OrderView at_t = reroot(skel, t);
  Region region = Region::tangent_atom(at_t, tangent_class(*skel, s, t));
  if (!is_scott_open(region, at_t)) return false;
  return !is_upper_set(region, reroot(skel, s));
}

// --- registry ---

struct PropertyDef {
  const char* name;
  void (*generate)(const GeneratorConfig&, Rng&, Fields&);
  bool (*check)(const FieldMap&);
};

const std::vector<PropertyDef>& registry() {
  static const std::vector<PropertyDef> defs = {
      {"meet-greatest-lower-bound", gen_tree_base_ab, check_meet_glb},
      {"infimum-fold-invariance", gen_infimum, check_infimum},
      {"segment-triangle-containment", gen_tree_abc, check_segment_triangle},
      {"segment-base-invariance", gen_segment_bases, check_segment_base_invariance},
      {"rebased-minimum", gen_tree_t, check_rebased_minimum},
      {"segment-total-order", gen_comparable_pair, check_segment_total_order},
      {"tangent-equivalence-relation", gen_tree_t, check_tangent_equivalence},
      {"tangent-space-partition", gen_tree_t, check_tangent_partition},
      {"tangent-base-agnostic", gen_tangent_pair_bases, check_tangent_base_agnostic},
      {"tangent-class-point-set-equality", gen_tangent_pair, check_tangent_class_equality},
      {"metric-space-axioms", gen_tree_base_abc, check_metric_axioms},
      {"metric-meet-additivity", gen_tree_base_ab, check_metric_meet_additivity},
      {"metric-monotone-on-chains", gen_metric_chain, check_metric_monotone},
      {"metric-ball-inside-tangent-class", gen_metric_ball, check_metric_ball},
      {"scott-decider-agreement", gen_region_case, check_scott_decider_agreement},
      {"tangent-class-inaccessibility", gen_class_with_base, check_class_inaccessible},
      {"tangent-class-upper-at-anchor-base", gen_class_pair, check_class_upper_at_anchor},
      {"tangent-class-upper-characterization", gen_class_with_probe, check_class_upper_characterization},
      {"scott-open-weak-witness", gen_scott_open_region, check_weak_witness},
      {"root-class-not-scott-open", gen_tree_only, check_root_class_closed},
      {"tangent-class-scott-open-at-anchor-base", gen_class_pair, check_class_scott_open_at_anchor},
      {"hausdorff-separation", gen_point_pair, check_hausdorff_separation},
      {"scott-topology-depends-on-base", gen_vertex_pair, check_topology_depends_on_base},
  };
  return defs;
}

const PropertyDef& lookup(std::string_view name) {
  for (const PropertyDef& def : registry()) {
    if (name == def.name) return def;
  }
  throw std::invalid_argument("unknown property '" + std::string(name) + "'");
}

bool run_check(const PropertyDef& def, const Fields& fields, std::string* note) {
  FieldMap map{fields};
  bool pass;
  try {
    pass = def.check(map);
  } catch (const RecordError&) {
    throw;  // corrupted record, not a failing case
  } catch (const std::logic_error& ex) {
    pass = false;
    if (note) {
      *note = ex.what();
      std::replace(note->begin(), note->end(), ' ', '_');
    }
  }
  // The injection hook: a record carrying sabotage=1 models a deliberately
  // wrong decider, so its verdict is inverted and must replay as a failure.
  if (map.has("sabotage") && map.get("sabotage") == "1") pass = !pass;
  return pass;
}

}  // namespace

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const PropertyDef& def : registry()) out.emplace_back(def.name);
    return out;
  }();
  return names;
}

bool has_property(std::string_view name) {
  for (const PropertyDef& def : registry()) {
    if (name == def.name) return true;
  }
  return false;
}

namespace {

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) {
  return seed ^ (0x9E3779B97F4A7C15ull * (index + 1));
}

}  // namespace

PropertyReport run_property(std::string_view name, const GeneratorConfig& config) {
  const PropertyDef& def = lookup(name);
  PropertyReport report;
  report.property = def.name;
  auto start = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(config.samples); ++i) {
    Rng rng(case_seed(config.seed, i));
    CaseRecord rec;
    rec.property = def.name;
    rec.index = i;
    def.generate(config, rng, rec.fields);
    std::string note;
    rec.pass = run_check(def, rec.fields, &note);
    ++report.cases_run;
    if (FieldMap{rec.fields}.has("vacuous")) ++report.vacuous_cases;
    if (!rec.pass) {
      if (!note.empty()) rec.fields.emplace_back("note", note);
      report.failures.push_back(std::move(rec));
    }
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

PropertyReport replay(std::string_view record_line) {
  CaseRecord rec = CaseRecord::parse(record_line);
  const PropertyDef& def = lookup(rec.property);
  PropertyReport report;
  report.property = rec.property;
  auto start = std::chrono::steady_clock::now();
  std::string note;
  rec.pass = run_check(def, rec.fields, &note);
  report.cases_run = 1;
  if (FieldMap{rec.fields}.has("vacuous")) ++report.vacuous_cases;
  if (!rec.pass) {
    if (!note.empty()) rec.fields.emplace_back("note", note);
    report.failures.push_back(std::move(rec));
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string render_case(std::string_view name, const GeneratorConfig& config, std::uint64_t index) {
  const PropertyDef& def = lookup(name);
  Rng rng(case_seed(config.seed, index));
  CaseRecord rec;
  rec.property = def.name;
  rec.index = index;
  def.generate(config, rng, rec.fields);
  rec.pass = run_check(def, rec.fields, nullptr);
  return rec.to_line();
}

}  // namespace treetopo
