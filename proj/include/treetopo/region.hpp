#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treetopo/order.hpp"
#include "treetopo/tangent.hpp"

namespace treetopo {

// A finite boolean combination of atomic subsets of the realization, bound to
// one view: the view fixes what "up" means for its order-dependent atoms.
// Deciders may probe a region under a different base over the same skeleton.
//
// Grammar (parse_region / to_string):
//   expr   := term { '|' term }
//   term   := factor { '&' factor }
//   factor := '!' factor | '(' expr ')' | atom
//   atom   := class(A,T) | up(P) | strictup(P) | point(P) | whole | empty
// where A, T, P use the point syntax of TreeSkeleton::parse_point.
class Region {
 public:
  static Region whole(OrderView view);
  static Region empty(OrderView view);
  static Region tangent_atom(OrderView view, TangentClassAtom atom);
  static Region up_set(OrderView view, Point p);
  static Region strict_up_set(OrderView view, Point p);
  static Region singleton(OrderView view, Point p);
  static Region union_of(const Region& x, const Region& y);
  static Region intersection_of(const Region& x, const Region& y);
  static Region complement_of(const Region& x);

  const OrderView& view() const { return view_; }
  bool contains(const Point& x) const;

  // Every point the region's shape depends on (class anchors and
  // representatives, up/strict-up/singleton thresholds).
  void collect_anchors(std::vector<Point>& out) const;

  std::string to_string() const;

  struct Node;  // opaque; defined with the implementation

 private:
  Region(OrderView view, std::shared_ptr<const Node> node);
  OrderView view_;
  std::shared_ptr<const Node> node_;
};

Region parse_region(const OrderView& view, std::string_view expr);

// The canonical cut set for quantifying over this region exactly: skeleton
// vertices, the region's anchors, its binding base, and the midpoints of the
// maximal sub-arcs those carve out.
std::vector<Point> cut_points(const Region& region);

struct UpperSetWitness {
  Point member;
  Point above_nonmember;
};

// Exact: membership is constant on the sub-arcs between cut points, so the
// pair scan over cut points decides the property for the whole realization.
bool is_upper_set(const Region& region, const OrderView& view, UpperSetWitness* witness = nullptr);

// A finite strictly increasing chain in a view's order, optionally with a
// strict supremum above every element (a limit the chain approaches but never
// attains).
struct DirectedChain {
  std::vector<Point> elements;
  std::optional<Point> limit;

  const Point& supremum() const { return limit ? *limit : elements.back(); }
};

// Throws std::invalid_argument unless elements are nonempty and strictly
// increasing under the view, with the limit strictly above the last element.
void validate_chain(const DirectedChain& chain, const OrderView& view);

struct InaccessibilityWitness {
  DirectedChain chain;  // supremum inside the region, no element inside
};

bool is_inaccessible_by_directed_joins(const Region& region, const OrderView& view,
                                       std::span<const DirectedChain> chains,
                                       InaccessibilityWitness* witness = nullptr);

struct ScottWitness {
  // NotUpper: member < other escapes the region. NoPredecessor: `member` has
  // points just below it (sampled at `other`) outside the region, so a chain
  // from below converges into the region without entering it.
  enum class Kind { NotUpper, NoPredecessor };
  Kind kind = Kind::NotUpper;
  Point member;
  Point other;
};

// Exact decider: upward closure plus, at every member cut point p other than
// the base, membership of the sub-arc immediately below p. The latter is
// equivalent to inaccessibility by every chain converging to p from below.
bool is_scott_open(const Region& region, const OrderView& view, ScottWitness* witness = nullptr);

// For a Scott-open region and a member point a, a point t with the class of a
// at t inside the region (verified over cut points). At the base itself the
// region must cover everything, so any other point works; throws
// std::invalid_argument when the region is not Scott-open under the view,
// when a is outside, or on a single-vertex skeleton with no second point.
Point weak_open_witness(const Region& region, const Point& a, const OrderView& view);

// Two disjoint classes separating p from q, anchored at the midpoint of
// [p, q]. Throws std::invalid_argument when p == q.
std::pair<Region, Region> hausdorff_witness(std::shared_ptr<const TreeSkeleton> skeleton,
                                            const Point& p, const Point& q);

}  // namespace treetopo
