#pragma once

#include <memory>
#include <span>
#include <vector>

#include "treetopo/skeleton.hpp"

namespace treetopo {

// A skeleton together with a base point. The view's order is "a precedes b
// iff a lies on the segment from the base to b"; every rebasing question is
// answered through one of these.
struct OrderView {
  std::shared_ptr<const TreeSkeleton> skeleton;
  Point base;

  friend bool operator==(const OrderView& x, const OrderView& y) {
    return x.skeleton.get() == y.skeleton.get() && x.base == y.base;
  }
};

OrderView root_view(std::shared_ptr<const TreeSkeleton> skeleton);
OrderView reroot(std::shared_ptr<const TreeSkeleton> skeleton, const Point& base);

bool leq(const OrderView& view, const Point& a, const Point& b);
bool lt(const OrderView& view, const Point& a, const Point& b);

// The unique point where the segments from base to a and from base to b part
// ways: the greatest lower bound of {a, b} in the view's order.
Point meet(const OrderView& view, const Point& a, const Point& b);

// Fold of `meet` over a non-empty list; throws std::invalid_argument on an
// empty one.
Point infimum(const OrderView& view, std::span<const Point> points);

// The unique point lying on all three pairwise segments.
Point median(const TreeSkeleton& skel, const Point& x, const Point& y, const Point& z);

// One maximal straight piece of a path: traversed from offset `from` to
// offset `to` on one edge (offsets from the edge's upper endpoint; direction
// encoded by their order). Never zero length.
struct PathArc {
  EdgeId edge;
  Rat from;
  Rat to;
};

// The closed segment between two points, materialized as the traversal arc
// list plus the skeleton vertices passed (in order, endpoints included when
// they are vertices).
class PathRepr {
 public:
  const Point& start() const { return a_; }
  const Point& end() const { return b_; }
  const std::vector<PathArc>& arcs() const { return arcs_; }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const Rat& length() const { return length_; }

 private:
  friend PathRepr path_between(const TreeSkeleton&, const Point&, const Point&);
  Point a_, b_;
  std::vector<PathArc> arcs_;
  std::vector<VertexId> vertices_;
  Rat length_;
};

PathRepr path_between(const TreeSkeleton& skel, const Point& a, const Point& b);

// Same point set for every view over the same skeleton; the view parameter
// fixes which greatest-lower-bound decomposition the arcs realize.
PathRepr segment(const OrderView& view, const Point& a, const Point& b);

bool point_on_segment(const TreeSkeleton& skel, const Point& c, const PathRepr& path);

// The point at arc distance `along` from path.start(); requires
// 0 <= along <= path.length().
Point point_along(const TreeSkeleton& skel, const PathRepr& path, const Rat& along);

}  // namespace treetopo
