#include "treetopo/skeleton.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace treetopo {

namespace {

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s.front())) && s.front() != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

std::shared_ptr<const TreeSkeleton> TreeSkeleton::build(const Spec& spec) {
  auto skel = std::shared_ptr<TreeSkeleton>(new TreeSkeleton());
  if (spec.vertex_names.empty()) throw ParseError("tree has no vertices");

  std::map<std::string, VertexId, std::less<>> by_name;
  for (const auto& name : spec.vertex_names) {
    if (!valid_name(name))
      throw ParseError("invalid vertex name '" + name + "' (letters, digits, '_'; must not start with a digit)");
    auto [it, fresh] = by_name.emplace(name, static_cast<VertexId>(skel->names_.size()));
    if (!fresh) throw ParseError("duplicate vertex '" + name + "'");
    skel->names_.push_back(name);
  }

  auto root_it = by_name.find(spec.root_name);
  if (root_it == by_name.end()) throw ParseError("root '" + spec.root_name + "' is not a declared vertex");
  skel->root_ = root_it->second;

  skel->incident_.resize(skel->names_.size());
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const auto& e : spec.edges) {
    auto ia = by_name.find(e.a);
    auto ib = by_name.find(e.b);
    if (ia == by_name.end()) throw ParseError("edge references unknown vertex '" + e.a + "'");
    if (ib == by_name.end()) throw ParseError("edge references unknown vertex '" + e.b + "'");
    if (ia->second == ib->second) throw ParseError("self-loop at '" + e.a + "'");
    if (e.length <= 0)
      throw ParseError("edge " + e.a + " " + e.b + " has non-positive length " + format_rational(e.length));
    auto key = std::minmax(ia->second, ib->second);
    if (!seen.insert(key).second) throw ParseError("duplicate edge between '" + e.a + "' and '" + e.b + "'");
    EdgeId id = static_cast<EdgeId>(skel->edges_.size());
    skel->edges_.push_back(EdgeRec{ia->second, ib->second, e.length, ia->second, ib->second});
    skel->incident_[ia->second].push_back(id);
    skel->incident_[ib->second].push_back(id);
  }

  if (skel->edges_.size() + 1 > skel->names_.size())
    throw ParseError("cycle detected: more edges than a tree allows");
  if (skel->edges_.size() + 1 < skel->names_.size())
    throw ParseError("disconnected graph: too few edges for a tree");

  skel->index_from_root();
  return skel;
}

void TreeSkeleton::index_from_root() {
  const std::size_t n = names_.size();
  parent_.assign(n, kNoVertex);
  parent_edge_.assign(n, kNoEdge);
  depth_.assign(n, Rat(0));
  tin_.assign(n, 0);
  tout_.assign(n, 0);

  // Orient edges by BFS from the root.
  std::vector<bool> reached(n, false);
  std::vector<VertexId> queue{root_};
  reached[root_] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId v = queue[head];
    for (EdgeId id : incident_[v]) {
      EdgeRec& e = edges_[id];
      VertexId other = e.a == v ? e.b : e.a;
      if (reached[other]) continue;
      reached[other] = true;
      e.upper = v;
      e.lower = other;
      parent_[other] = v;
      parent_edge_[other] = id;
      depth_[other] = depth_[v] + e.length;
      queue.push_back(other);
    }
  }
  if (queue.size() != n) throw ParseError("disconnected graph: not every vertex reaches the root");

  // DFS intervals for O(1) ancestor tests.
  std::uint32_t clock = 0;
  std::vector<std::pair<VertexId, std::size_t>> stack{{root_, 0}};
  tin_[root_] = clock++;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto& inc = incident_[v];
    bool descended = false;
    while (next < inc.size()) {
      const EdgeRec& e = edges_[inc[next]];
      ++next;
      if (e.upper != v) continue;  // skip the parent edge
      tin_[e.lower] = clock++;
      stack.emplace_back(e.lower, 0);
      descended = true;
      break;
    }
    if (!descended && next >= inc.size()) {
      tout_[v] = clock++;
      stack.pop_back();
    }
  }
}

std::optional<VertexId> TreeSkeleton::find_vertex(std::string_view name) const {
  for (VertexId v = 0; v < names_.size(); ++v) {
    if (names_[v] == name) return v;
  }
  return std::nullopt;
}

std::optional<EdgeId> TreeSkeleton::find_edge(VertexId x, VertexId y) const {
  for (EdgeId id : incident_[x]) {
    const EdgeRec& e = edges_[id];
    if ((e.a == x && e.b == y) || (e.a == y && e.b == x)) return id;
  }
  return std::nullopt;
}

Point TreeSkeleton::vertex_point(VertexId v) const {
  if (v >= names_.size()) throw std::invalid_argument("vertex id out of range");
  return Point::at_vertex(v);
}

Point TreeSkeleton::point_at_offset(EdgeId e, const Rat& offset_from_upper) const {
  if (e >= edges_.size()) throw std::invalid_argument("edge id out of range");
  const EdgeRec& rec = edges_[e];
  if (offset_from_upper < 0 || offset_from_upper > rec.length)
    throw std::invalid_argument("offset " + format_rational(offset_from_upper) + " outside edge of length " +
                                format_rational(rec.length));
  if (offset_from_upper == 0) return Point::at_vertex(rec.upper);
  if (offset_from_upper == rec.length) return Point::at_vertex(rec.lower);
  return Point::at_interior(e, offset_from_upper);
}

Point TreeSkeleton::canonical_point(std::string_view v1, std::string_view v2, const Rat& offset_from_v1) const {
  auto a = find_vertex(v1);
  if (!a) throw ParseError("unknown vertex '" + std::string(v1) + "'");
  auto b = find_vertex(v2);
  if (!b) throw ParseError("unknown vertex '" + std::string(v2) + "'");
  auto e = find_edge(*a, *b);
  if (!e) throw ParseError("no edge between '" + std::string(v1) + "' and '" + std::string(v2) + "'");
  const EdgeRec& rec = edges_[*e];
  Rat from_upper = (*a == rec.upper) ? offset_from_v1 : rec.length - offset_from_v1;
  try {
    return point_at_offset(*e, from_upper);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
}

Point TreeSkeleton::parse_point(std::string_view text) const {
  auto at = text.find('@');
  if (at == std::string_view::npos) {
    auto v = find_vertex(text);
    if (!v) throw ParseError("unknown point '" + std::string(text) + "'");
    return Point::at_vertex(*v);
  }
  std::string_view pair = text.substr(0, at);
  std::string_view off_text = text.substr(at + 1);
  auto dash = pair.find('-');
  if (dash == std::string_view::npos)
    throw ParseError("malformed point '" + std::string(text) + "' (expected v1-v2@offset)");
  Rat off;
  try {
    off = parse_rational(off_text);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
  return canonical_point(pair.substr(0, dash), pair.substr(dash + 1), off);
}

std::string TreeSkeleton::point_name(const Point& p) const {
  if (p.is_vertex()) return names_[p.vertex_id()];
  const EdgeRec& e = edges_[p.edge_id()];
  return names_[e.upper] + "-" + names_[e.lower] + "@" + format_rational(p.offset());
}

bool TreeSkeleton::valid_point(const Point& p) const {
  if (p.is_vertex()) return p.vertex_id() < names_.size();
  if (p.edge_id() >= edges_.size()) return false;
  return p.offset() > 0 && p.offset() < edges_[p.edge_id()].length;
}

VertexId TreeSkeleton::up_vertex(const Point& p) const {
  return p.is_vertex() ? p.vertex_id() : edges_[p.edge_id()].upper;
}

VertexId TreeSkeleton::down_vertex(const Point& p) const {
  return p.is_vertex() ? p.vertex_id() : edges_[p.edge_id()].lower;
}

Rat TreeSkeleton::depth(const Point& p) const {
  if (p.is_vertex()) return depth_[p.vertex_id()];
  return depth_[edges_[p.edge_id()].upper] + p.offset();
}

bool TreeSkeleton::ancestor_or_self(VertexId u, VertexId w) const {
  return tin_[u] <= tin_[w] && tout_[w] <= tout_[u];
}

VertexId TreeSkeleton::vertex_lca(VertexId u, VertexId w) const {
  while (!ancestor_or_self(u, w)) u = parent_[u];
  return u;
}

bool TreeSkeleton::root_leq(const Point& p, const Point& q) const {
  if (p.is_interior() && q.is_interior() && p.edge_id() == q.edge_id())
    return p.offset() <= q.offset();
  return ancestor_or_self(down_vertex(p), up_vertex(q));
}

Point TreeSkeleton::root_meet(const Point& p, const Point& q) const {
  if (root_leq(p, q)) return p;
  if (root_leq(q, p)) return q;
  return Point::at_vertex(vertex_lca(down_vertex(p), down_vertex(q)));
}

Rat TreeSkeleton::distance(const Point& p, const Point& q) const {
  return depth(p) + depth(q) - 2 * depth(root_meet(p, q));
}

std::string TreeSkeleton::to_text() const {
  std::ostringstream out;
  for (VertexId v = 0; v < names_.size(); ++v) {
    out << "vertex " << names_[v];
    if (v == root_) out << " root";
    out << '\n';
  }
  for (const EdgeRec& e : edges_)
    out << "edge " << names_[e.a] << ' ' << names_[e.b] << ' ' << format_rational(e.length) << '\n';
  return out.str();
}

std::string TreeSkeleton::to_compact() const {
  std::ostringstream out;
  for (VertexId v = 0; v < names_.size(); ++v) {
    if (v) out << ',';
    out << names_[v];
    if (v == root_) out << '*';
  }
  out << ';';
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i) out << ',';
    const EdgeRec& e = edges_[i];
    out << names_[e.a] << '-' << names_[e.b] << ':' << format_rational(e.length);
  }
  return out.str();
}

namespace {

std::shared_ptr<const TreeSkeleton> parse_tree_lines(std::string_view text) {
  TreeSkeleton::Spec spec;
  bool have_root = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream tok{std::string(line)};
    std::vector<std::string> words;
    for (std::string w; tok >> w;) words.push_back(std::move(w));
    if (words.empty()) continue;

    if (words[0] == "vertex") {
      if (words.size() < 2 || words.size() > 3) parse_fail(line_no, "expected: vertex <name> [root]");
      if (words.size() == 3) {
        if (words[2] != "root") parse_fail(line_no, "unexpected token '" + words[2] + "' after vertex name");
        if (have_root) parse_fail(line_no, "second root declaration '" + words[1] + "'");
        have_root = true;
        spec.root_name = words[1];
      }
      spec.vertex_names.push_back(words[1]);
    } else if (words[0] == "edge") {
      if (words.size() != 4) parse_fail(line_no, "expected: edge <v1> <v2> <length>");
      Rat len;
      try {
        len = parse_rational(words[3]);
      } catch (const std::invalid_argument& ex) {
        parse_fail(line_no, ex.what());
      }
      spec.edges.push_back({words[1], words[2], len});
    } else {
      parse_fail(line_no, "unknown directive '" + words[0] + "'");
    }
  }
  if (spec.vertex_names.empty()) throw ParseError("tree has no vertices");
  if (!have_root) throw ParseError("no vertex is marked as the root");
  return TreeSkeleton::build(spec);
}

// Parenthesized form: subtree := '(' subtree {',' subtree} ')' name [':' len]
//                              | name [':' len]
// The outermost name is the root and must not carry a length.
class ParenParser {
 public:
  explicit ParenParser(std::string_view text) : text_(text) {}

  std::shared_ptr<const TreeSkeleton> run() {
    Node top = subtree();
    if (top.len) fail("the outermost label must not carry a length");
    skip_ws();
    if (!eat(';')) fail("expected ';' after the outermost group");
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters after ';'");
    spec_.root_name = top.label;
    return TreeSkeleton::build(spec_);
  }

 private:
  struct Node {
    std::string label;
    std::optional<Rat> len;
  };

  Node subtree() {
    skip_ws();
    std::vector<Node> children;
    if (eat('(')) {
      for (;;) {
        children.push_back(subtree());
        skip_ws();
        if (eat(',')) continue;
        if (eat(')')) break;
        fail("expected ',' or ')'");
      }
    }
    skip_ws();
    Node out{name(), std::nullopt};
    spec_.vertex_names.push_back(out.label);
    for (const Node& child : children) {
      if (!child.len) fail("missing ':' length on '" + child.label + "'");
      spec_.edges.push_back({out.label, child.label, *child.len});
    }
    skip_ws();
    if (eat(':')) out.len = length();
    return out;
  }

  std::string name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a vertex label");
    return std::string(text_.substr(start, pos_ - start));
  }

  Rat length() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_.find_first_of(",();:", pos_) != pos_) ++pos_;
    try {
      return parse_rational(trim(text_.substr(start, pos_ - start)));
    } catch (const std::invalid_argument& ex) {
      fail(ex.what());
    }
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  TreeSkeleton::Spec spec_;
};

}  // namespace

std::shared_ptr<const TreeSkeleton> parse_tree(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '(') return ParenParser(text).run();
    break;
  }
  return parse_tree_lines(text);
}

std::shared_ptr<const TreeSkeleton> parse_tree_compact(std::string_view token) {
  auto semi = token.find(';');
  if (semi == std::string_view::npos) throw ParseError("compact tree: missing ';' divider");
  TreeSkeleton::Spec spec;
  bool have_root = false;

  std::string_view verts = token.substr(0, semi);
  while (!verts.empty()) {
    auto comma = verts.find(',');
    std::string_view item = verts.substr(0, comma);
    verts = comma == std::string_view::npos ? std::string_view{} : verts.substr(comma + 1);
    if (item.empty()) throw ParseError("compact tree: empty vertex entry");
    if (item.back() == '*') {
      item.remove_suffix(1);
      if (have_root) throw ParseError("compact tree: two roots");
      have_root = true;
      spec.root_name = std::string(item);
    }
    spec.vertex_names.emplace_back(item);
  }
  if (!have_root) throw ParseError("compact tree: no root marker");

  std::string_view edges = token.substr(semi + 1);
  while (!edges.empty()) {
    auto comma = edges.find(',');
    std::string_view item = edges.substr(0, comma);
    edges = comma == std::string_view::npos ? std::string_view{} : edges.substr(comma + 1);
    auto dash = item.find('-');
    auto colon = item.find(':', dash == std::string_view::npos ? 0 : dash);
    if (dash == std::string_view::npos || colon == std::string_view::npos)
      throw ParseError("compact tree: malformed edge '" + std::string(item) + "'");
    Rat len;
    try {
      len = parse_rational(item.substr(colon + 1));
    } catch (const std::invalid_argument& ex) {
      throw ParseError(std::string("compact tree: ") + ex.what());
    }
    spec.edges.push_back({std::string(item.substr(0, dash)),
                          std::string(item.substr(dash + 1, colon - dash - 1)), len});
  }
  return TreeSkeleton::build(spec);
}

std::vector<Point> canonical_cut_points(const TreeSkeleton& skel, const std::vector<Point>& anchors) {
  std::set<Point> cuts;
  for (VertexId v = 0; v < skel.vertex_count(); ++v) cuts.insert(Point::at_vertex(v));

  std::map<EdgeId, std::vector<Rat>> interior;
  for (const Point& p : anchors) {
    if (!skel.valid_point(p)) throw std::invalid_argument("anchor does not lie on this skeleton");
    cuts.insert(p);
    if (p.is_interior()) interior[p.edge_id()].push_back(p.offset());
  }

  for (EdgeId e = 0; e < skel.edge_count(); ++e) {
    std::vector<Rat> offs{Rat(0), skel.edge(e).length};
    if (auto it = interior.find(e); it != interior.end())
      offs.insert(offs.end(), it->second.begin(), it->second.end());
    std::sort(offs.begin(), offs.end());
    offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
    for (std::size_t i = 0; i + 1 < offs.size(); ++i)
      cuts.insert(Point::at_interior(e, (offs[i] + offs[i + 1]) / 2));
  }
  return std::vector<Point>(cuts.begin(), cuts.end());
}

}  // namespace treetopo
