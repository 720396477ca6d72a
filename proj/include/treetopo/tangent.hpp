#pragma once

#include <vector>

#include "treetopo/order.hpp"

namespace treetopo {

// The direction a class leaves its anchor through: an edge plus the endpoint
// it heads toward. Two points sit in the same class at an anchor exactly when
// their paths from the anchor start with the same direction.
struct Direction {
  EdgeId edge = 0;
  VertexId toward = 0;

  friend bool operator==(const Direction&, const Direction&) = default;
};

// One equivalence class at an anchor: all points whose segment to the
// representative avoids the anchor. Base-independent.
class TangentClassAtom {
 public:
  const Point& anchor() const { return anchor_; }
  const Point& representative() const { return representative_; }
  const Direction& direction() const { return dir_; }

  bool contains(const TreeSkeleton& skel, const Point& x) const;

  // Point-set equality for atoms at the same anchor.
  friend bool operator==(const TangentClassAtom& x, const TangentClassAtom& y) {
    return x.anchor_ == y.anchor_ && x.dir_ == y.dir_;
  }

 private:
  friend TangentClassAtom tangent_class(const TreeSkeleton&, const Point&, const Point&);
  friend struct TangentSpaceBuilder;
  Point anchor_;
  Point representative_;
  Direction dir_;
};

// Whether the segment [a, b] avoids t. Throws std::invalid_argument when a or
// b coincides with t (the relation lives on the complement of the anchor).
bool same_class(const TreeSkeleton& skel, const Point& a, const Point& b, const Point& t);

// The class of `a` at anchor `t`; requires a != t.
TangentClassAtom tangent_class(const TreeSkeleton& skel, const Point& a, const Point& t);

// Every class at the anchor, in a deterministic order (vertex anchor: by
// incident edge id; interior anchor: root side first).
struct TangentSpace {
  Point anchor;
  std::vector<TangentClassAtom> classes;
};

TangentSpace tangent_space(const TreeSkeleton& skel, const Point& t);

}  // namespace treetopo
