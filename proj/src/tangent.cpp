#include "treetopo/tangent.hpp"

#include <stdexcept>

namespace treetopo {

namespace {

bool strictly_between(const TreeSkeleton& skel, const Point& mid, const Point& a, const Point& b) {
  return skel.distance(a, mid) + skel.distance(mid, b) == skel.distance(a, b);
}

}  // namespace

bool TangentClassAtom::contains(const TreeSkeleton& skel, const Point& x) const {
  if (x == anchor_) return false;
  return !strictly_between(skel, anchor_, representative_, x);
}

bool same_class(const TreeSkeleton& skel, const Point& a, const Point& b, const Point& t) {
  if (a == t || b == t) throw std::invalid_argument("the class relation is undefined at its own anchor");
  return !strictly_between(skel, t, a, b);
}

TangentClassAtom tangent_class(const TreeSkeleton& skel, const Point& a, const Point& t) {
  if (a == t) throw std::invalid_argument("a tangent class needs a representative distinct from the anchor");
  PathRepr path = path_between(skel, t, a);
  const PathArc& first = path.arcs().front();
  const EdgeRec& e = skel.edge(first.edge);

  TangentClassAtom atom;
  atom.anchor_ = t;
  atom.representative_ = a;
  atom.dir_ = Direction{first.edge, first.to > first.from ? e.lower : e.upper};
  return atom;
}

struct TangentSpaceBuilder {
  static TangentClassAtom make(const Point& t, EdgeId e, VertexId toward) {
    TangentClassAtom atom;
    atom.anchor_ = t;
    atom.representative_ = Point::at_vertex(toward);
    atom.dir_ = Direction{e, toward};
    return atom;
  }
};

TangentSpace tangent_space(const TreeSkeleton& skel, const Point& t) {
  if (!skel.valid_point(t)) throw std::invalid_argument("anchor does not lie on this skeleton");
  TangentSpace space;
  space.anchor = t;
  if (t.is_interior()) {
    const EdgeRec& e = skel.edge(t.edge_id());
    space.classes.push_back(TangentSpaceBuilder::make(t, t.edge_id(), e.upper));
    space.classes.push_back(TangentSpaceBuilder::make(t, t.edge_id(), e.lower));
  } else {
    for (EdgeId id : skel.incident_edges(t.vertex_id())) {
      const EdgeRec& e = skel.edge(id);
      VertexId other = e.upper == t.vertex_id() ? e.lower : e.upper;
      space.classes.push_back(TangentSpaceBuilder::make(t, id, other));
    }
  }
  return space;
}

}  // namespace treetopo
