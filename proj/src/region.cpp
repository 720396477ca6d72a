#include "treetopo/region.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace treetopo {

struct Region::Node {
  enum class Kind { Whole, Empty, Class, Up, StrictUp, Single, Union, Intersect, Complement };
  Kind kind = Kind::Whole;
  std::optional<TangentClassAtom> atom;  // Class
  std::optional<Point> point;            // Up / StrictUp / Single
  std::shared_ptr<const Node> left, right;
};

// ---- construction ----------------------------------------------------------

Region::Region(OrderView view, std::shared_ptr<const Node> node)
    : view_(std::move(view)), node_(std::move(node)) {}

static std::shared_ptr<const Region::Node> make_node(Region::Node n) {
  return std::make_shared<const Region::Node>(std::move(n));
}

Region Region::whole(OrderView view) {
  return Region(std::move(view), make_node({Node::Kind::Whole, {}, {}, nullptr, nullptr}));
}

Region Region::empty(OrderView view) {
  return Region(std::move(view), make_node({Node::Kind::Empty, {}, {}, nullptr, nullptr}));
}

Region Region::tangent_atom(OrderView view, TangentClassAtom atom) {
  if (!view.skeleton->valid_point(atom.anchor()) || !view.skeleton->valid_point(atom.representative()))
    throw std::invalid_argument("class atom does not lie on the view's skeleton");
  return Region(std::move(view), make_node({Node::Kind::Class, std::move(atom), {}, nullptr, nullptr}));
}

Region Region::up_set(OrderView view, Point p) {
  if (!view.skeleton->valid_point(p)) throw std::invalid_argument("threshold does not lie on the view's skeleton");
  return Region(std::move(view), make_node({Node::Kind::Up, {}, std::move(p), nullptr, nullptr}));
}

Region Region::strict_up_set(OrderView view, Point p) {
  if (!view.skeleton->valid_point(p)) throw std::invalid_argument("threshold does not lie on the view's skeleton");
  return Region(std::move(view), make_node({Node::Kind::StrictUp, {}, std::move(p), nullptr, nullptr}));
}

Region Region::singleton(OrderView view, Point p) {
  if (!view.skeleton->valid_point(p)) throw std::invalid_argument("point does not lie on the view's skeleton");
  return Region(std::move(view), make_node({Node::Kind::Single, {}, std::move(p), nullptr, nullptr}));
}

Region Region::union_of(const Region& x, const Region& y) {
  if (!(x.view_ == y.view_)) throw std::invalid_argument("regions bound to different views");
  return Region(x.view_, make_node({Node::Kind::Union, {}, {}, x.node_, y.node_}));
}

Region Region::intersection_of(const Region& x, const Region& y) {
  if (!(x.view_ == y.view_)) throw std::invalid_argument("regions bound to different views");
  return Region(x.view_, make_node({Node::Kind::Intersect, {}, {}, x.node_, y.node_}));
}

Region Region::complement_of(const Region& x) {
  return Region(x.view_, make_node({Node::Kind::Complement, {}, {}, x.node_, nullptr}));
}

// ---- evaluation ------------------------------------------------------------

static bool eval_node(const Region::Node& n, const OrderView& view, const Point& x) {
  using K = Region::Node::Kind;
  switch (n.kind) {
    case K::Whole:
      return true;
    case K::Empty:
      return false;
    case K::Class:
      return n.atom->contains(*view.skeleton, x);
    case K::Up:
      return leq(view, *n.point, x);
    case K::StrictUp:
      return lt(view, *n.point, x);
    case K::Single:
      return x == *n.point;
    case K::Union:
      return eval_node(*n.left, view, x) || eval_node(*n.right, view, x);
    case K::Intersect:
      return eval_node(*n.left, view, x) && eval_node(*n.right, view, x);
    case K::Complement:
      return !eval_node(*n.left, view, x);
  }
  return false;
}

bool Region::contains(const Point& x) const {
  if (!view_.skeleton->valid_point(x)) throw std::invalid_argument("query point does not lie on this skeleton");
  return eval_node(*node_, view_, x);
}

static void walk_anchors(const Region::Node& n, std::vector<Point>& out) {
  using K = Region::Node::Kind;
  switch (n.kind) {
    case K::Class:
      out.push_back(n.atom->anchor());
      out.push_back(n.atom->representative());
      break;
    case K::Up:
    case K::StrictUp:
    case K::Single:
      out.push_back(*n.point);
      break;
    case K::Union:
    case K::Intersect:
      walk_anchors(*n.left, out);
      walk_anchors(*n.right, out);
      break;
    case K::Complement:
      walk_anchors(*n.left, out);
      break;
    default:
      break;
  }
}

void Region::collect_anchors(std::vector<Point>& out) const { walk_anchors(*node_, out); }

// ---- printing --------------------------------------------------------------

static int node_prec(const Region::Node& n) {
  using K = Region::Node::Kind;
  switch (n.kind) {
    case K::Union:
      return 1;
    case K::Intersect:
      return 2;
    case K::Complement:
      return 3;
    default:
      return 4;
  }
}

static void print_node(const Region::Node& n, const TreeSkeleton& skel, std::string& out) {
  using K = Region::Node::Kind;
  auto child = [&](const Region::Node& c) {
    bool parens = node_prec(c) < node_prec(n);
    if (parens) out += '(';
    print_node(c, skel, out);
    if (parens) out += ')';
  };
  switch (n.kind) {
    case K::Whole:
      out += "whole";
      break;
    case K::Empty:
      out += "empty";
      break;
    case K::Class:
      out += "class(";
      out += skel.point_name(n.atom->representative());
      out += ',';
      out += skel.point_name(n.atom->anchor());
      out += ')';
      break;
    case K::Up:
      out += "up(" + skel.point_name(*n.point) + ")";
      break;
    case K::StrictUp:
      out += "strictup(" + skel.point_name(*n.point) + ")";
      break;
    case K::Single:
      out += "point(" + skel.point_name(*n.point) + ")";
      break;
    case K::Union:
      child(*n.left);
      out += '|';
      child(*n.right);
      break;
    case K::Intersect:
      child(*n.left);
      out += '&';
      child(*n.right);
      break;
    case K::Complement:
      out += '!';
      child(*n.left);
      break;
  }
}

std::string Region::to_string() const {
  std::string out;
  print_node(*node_, *view_.skeleton, out);
  return out;
}

// ---- parsing ---------------------------------------------------------------

namespace {

class RegionParser {
 public:
  RegionParser(const OrderView& view, std::string_view text) : view_(view), text_(text) {}

  Region run() {
    Region r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing text");
    return r;
  }

 private:
  Region expr() {
    Region r = term();
    for (;;) {
      skip_ws();
      if (!eat('|')) return r;
      r = Region::union_of(r, term());
    }
  }

  Region term() {
    Region r = factor();
    for (;;) {
      skip_ws();
      if (!eat('&')) return r;
      r = Region::intersection_of(r, factor());
    }
  }

  Region factor() {
    skip_ws();
    if (eat('!')) return Region::complement_of(factor());
    if (eat('(')) {
      Region r = expr();
      skip_ws();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    return atom();
  }

  Region atom() {
    std::string word = ident();
    if (word == "whole") return Region::whole(view_);
    if (word == "empty") return Region::empty(view_);
    if (word == "class") {
      auto args = arg_list(2);
      Point rep = point(args[0]);
      Point anchor = point(args[1]);
      return Region::tangent_atom(view_, tangent_class(*view_.skeleton, rep, anchor));
    }
    if (word == "up") return Region::up_set(view_, point(arg_list(1)[0]));
    if (word == "strictup") return Region::strict_up_set(view_, point(arg_list(1)[0]));
    if (word == "point") return Region::singleton(view_, point(arg_list(1)[0]));
    fail("unknown region atom '" + word + "'");
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a region atom");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<std::string> arg_list(std::size_t count) {
    skip_ws();
    if (!eat('(')) fail("expected '('");
    std::vector<std::string> args;
    for (;;) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')') ++pos_;
      if (pos_ == text_.size()) fail("unterminated argument list");
      args.emplace_back(trim(text_.substr(start, pos_ - start)));
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      ++pos_;  // ','
    }
    if (args.size() != count)
      fail("expected " + std::to_string(count) + " argument(s), got " + std::to_string(args.size()));
    return args;
  }

  Point point(const std::string& text) {
    try {
      return view_.skeleton->parse_point(text);
    } catch (const ParseError& ex) {
      fail(ex.what());
    }
  }

  static std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
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
    throw ParseError("region expression, offset " + std::to_string(pos_) + ": " + what);
  }

  const OrderView& view_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Region parse_region(const OrderView& view, std::string_view expr) {
  return RegionParser(view, expr).run();
}

// ---- deciders --------------------------------------------------------------

namespace {

void require_same_skeleton(const Region& region, const OrderView& view) {
  if (region.view().skeleton.get() != view.skeleton.get())
    throw std::invalid_argument("region and view belong to different skeletons");
}

// Cut points able to decide the region under `view`: both the binding base
// and the probing base join the anchors, so every piece boundary is present.
std::vector<Point> decider_cuts(const Region& region, const OrderView& view) {
  std::vector<Point> anchors;
  region.collect_anchors(anchors);
  anchors.push_back(region.view().base);
  anchors.push_back(view.base);
  return canonical_cut_points(*view.skeleton, anchors);
}

}  // namespace

std::vector<Point> cut_points(const Region& region) { return decider_cuts(region, region.view()); }

bool is_upper_set(const Region& region, const OrderView& view, UpperSetWitness* witness) {
  require_same_skeleton(region, view);
  std::vector<Point> cuts = decider_cuts(region, view);
  std::vector<char> member(cuts.size());
  for (std::size_t i = 0; i < cuts.size(); ++i) member[i] = region.contains(cuts[i]);
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (!member[i]) continue;
    for (std::size_t j = 0; j < cuts.size(); ++j) {
      if (member[j]) continue;
      if (leq(view, cuts[i], cuts[j])) {
        if (witness) *witness = UpperSetWitness{cuts[i], cuts[j]};
        return false;
      }
    }
  }
  return true;
}

void validate_chain(const DirectedChain& chain, const OrderView& view) {
  if (chain.elements.empty()) throw std::invalid_argument("chain has no elements");
  for (const Point& p : chain.elements) {
    if (!view.skeleton->valid_point(p)) throw std::invalid_argument("chain element does not lie on this skeleton");
  }
  for (std::size_t i = 0; i + 1 < chain.elements.size(); ++i) {
    if (!lt(view, chain.elements[i], chain.elements[i + 1]))
      throw std::invalid_argument("chain elements are not strictly increasing under the view");
  }
  if (chain.limit) {
    if (!view.skeleton->valid_point(*chain.limit))
      throw std::invalid_argument("chain limit does not lie on this skeleton");
    if (!lt(view, chain.elements.back(), *chain.limit))
      throw std::invalid_argument("chain limit is not strictly above the last element");
  }
}

bool is_inaccessible_by_directed_joins(const Region& region, const OrderView& view,
                                       std::span<const DirectedChain> chains,
                                       InaccessibilityWitness* witness) {
  require_same_skeleton(region, view);
  for (const DirectedChain& chain : chains) {
    validate_chain(chain, view);
    if (!region.contains(chain.supremum())) continue;
    bool hit = false;
    for (const Point& p : chain.elements) {
      if (region.contains(p)) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      if (witness) witness->chain = chain;
      return false;
    }
  }
  return true;
}

namespace {

// The cut point strictly below p sitting closest to it; exists whenever
// p != base since the base is itself a cut.
std::optional<Point> nearest_cut_below(const OrderView& view, const std::vector<Point>& cuts, const Point& p) {
  const TreeSkeleton& skel = *view.skeleton;
  std::optional<Point> best;
  Rat best_depth;
  for (const Point& c : cuts) {
    if (!lt(view, c, p)) continue;
    Rat d = skel.distance(view.base, c);
    if (!best || d > best_depth) {
      best = c;
      best_depth = d;
    }
  }
  return best;
}

Point midpoint_between(const TreeSkeleton& skel, const Point& a, const Point& b) {
  PathRepr path = path_between(skel, a, b);
  return point_along(skel, path, path.length() / 2);
}

}  // namespace

bool is_scott_open(const Region& region, const OrderView& view, ScottWitness* witness) {
  require_same_skeleton(region, view);
  UpperSetWitness upper;
  if (!is_upper_set(region, view, &upper)) {
    if (witness) *witness = ScottWitness{ScottWitness::Kind::NotUpper, upper.member, upper.above_nonmember};
    return false;
  }
  std::vector<Point> cuts = decider_cuts(region, view);
  for (const Point& p : cuts) {
    if (p == view.base || !region.contains(p)) continue;
    std::optional<Point> below = nearest_cut_below(view, cuts, p);
    Point sample = midpoint_between(*view.skeleton, *below, p);
    if (!region.contains(sample)) {
      // The whole sub-arc under p misses the region, so chains climbing that
      // arc join to p without ever entering.
      if (witness) *witness = ScottWitness{ScottWitness::Kind::NoPredecessor, p, sample};
      return false;
    }
  }
  return true;
}

Point weak_open_witness(const Region& region, const Point& a, const OrderView& view) {
  require_same_skeleton(region, view);
  if (!view.skeleton->valid_point(a)) throw std::invalid_argument("point does not lie on this skeleton");
  if (!region.contains(a)) throw std::invalid_argument("point lies outside the region");
  if (!is_scott_open(region, view)) throw std::invalid_argument("region is not Scott-open under this view");

  const TreeSkeleton& skel = *view.skeleton;
  std::vector<Point> cuts = decider_cuts(region, view);

  Point anchor;
  if (a == view.base) {
    // A Scott-open set containing the base contains every point (it is upward
    // closed from the minimum), so any other anchor works; there is none only
    // on a single-vertex skeleton.
    bool found = false;
    for (const Point& c : cuts) {
      if (c != a) {
        anchor = c;
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("no separating anchor exists on a single-point realization");
  } else {
    // Midpoint of the cut-free gap just below a. Scott-openness makes that
    // whole gap part of the region, and any point whose segment to a avoids
    // the midpoint meets [base, a] strictly inside the gap or above it, so the
    // class of a there sits over members and upward closure covers it.
    std::optional<Point> below = nearest_cut_below(view, cuts, a);
    if (!below) throw std::logic_error("no cut below a non-base point");  // base is always a cut
    anchor = midpoint_between(skel, *below, a);
  }

  // The class of a at the anchor must sit inside the region; verify exactly
  // over cut points refined by a and the anchor.
  TangentClassAtom atom = tangent_class(skel, a, anchor);
  std::vector<Point> refine;
  region.collect_anchors(refine);
  refine.push_back(region.view().base);
  refine.push_back(view.base);
  refine.push_back(a);
  refine.push_back(anchor);
  for (const Point& x : canonical_cut_points(skel, refine)) {
    if (atom.contains(skel, x) && !region.contains(x))
      throw std::logic_error("weak-open witness verification failed");
  }
  return anchor;
}

std::pair<Region, Region> hausdorff_witness(std::shared_ptr<const TreeSkeleton> skeleton,
                                            const Point& p, const Point& q) {
  if (p == q) throw std::invalid_argument("cannot separate a point from itself");
  const TreeSkeleton& skel = *skeleton;
  if (!skel.valid_point(p) || !skel.valid_point(q))
    throw std::invalid_argument("point does not lie on this skeleton");
  Point mid = midpoint_between(skel, p, q);
  OrderView view = root_view(skeleton);
  return {Region::tangent_atom(view, tangent_class(skel, p, mid)),
          Region::tangent_atom(view, tangent_class(skel, q, mid))};
}

}  // namespace treetopo
