#include "treetopo/order.hpp"

#include <algorithm>
#include <stdexcept>

namespace treetopo {

namespace {

void require_point(const TreeSkeleton& skel, const Point& p, const char* role) {
  if (!skel.valid_point(p)) throw std::invalid_argument(std::string(role) + " does not lie on this skeleton");
}

}  // namespace

OrderView root_view(std::shared_ptr<const TreeSkeleton> skeleton) {
  Point base = skeleton->vertex_point(skeleton->root());
  return OrderView{std::move(skeleton), base};
}

OrderView reroot(std::shared_ptr<const TreeSkeleton> skeleton, const Point& base) {
  require_point(*skeleton, base, "base");
  return OrderView{std::move(skeleton), base};
}

bool leq(const OrderView& view, const Point& a, const Point& b) {
  const TreeSkeleton& skel = *view.skeleton;
  return skel.distance(view.base, a) + skel.distance(a, b) == skel.distance(view.base, b);
}

bool lt(const OrderView& view, const Point& a, const Point& b) {
  return a != b && leq(view, a, b);
}

Point median(const TreeSkeleton& skel, const Point& x, const Point& y, const Point& z) {
  PathRepr xy = path_between(skel, x, y);
  Rat along = (xy.length() + skel.distance(x, z) - skel.distance(y, z)) / 2;
  return point_along(skel, xy, along);
}

Point meet(const OrderView& view, const Point& a, const Point& b) {
  return median(*view.skeleton, view.base, a, b);
}

Point infimum(const OrderView& view, std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("infimum of an empty family");
  Point acc = points.front();
  for (std::size_t i = 1; i < points.size(); ++i) acc = meet(view, acc, points[i]);
  return acc;
}

namespace {

// Appends the arcs walking from p up to its root-order ancestor point anc,
// plus every skeleton vertex touched (in walk order).
void climb(const TreeSkeleton& skel, const Point& p, const Point& anc,
           std::vector<PathArc>& arcs, std::vector<VertexId>& verts) {
  if (p == anc) {
    if (p.is_vertex()) verts.push_back(p.vertex_id());
    return;
  }
  VertexId cur;
  if (p.is_interior()) {
    if (anc.is_interior() && anc.edge_id() == p.edge_id()) {
      arcs.push_back({p.edge_id(), p.offset(), anc.offset()});
      return;
    }
    arcs.push_back({p.edge_id(), p.offset(), Rat(0)});
    cur = skel.edge(p.edge_id()).upper;
  } else {
    cur = p.vertex_id();
  }
  VertexId stop = anc.is_vertex() ? anc.vertex_id() : skel.edge(anc.edge_id()).lower;
  verts.push_back(cur);
  while (cur != stop) {
    EdgeId pe = skel.parent_edge(cur);
    const EdgeRec& e = skel.edge(pe);
    arcs.push_back({pe, e.length, Rat(0)});
    cur = e.upper;
    verts.push_back(cur);
  }
  if (anc.is_interior()) {
    const EdgeRec& e = skel.edge(anc.edge_id());
    arcs.push_back({anc.edge_id(), e.length, anc.offset()});
  }
}

}  // namespace

PathRepr path_between(const TreeSkeleton& skel, const Point& a, const Point& b) {
  require_point(skel, a, "segment endpoint");
  require_point(skel, b, "segment endpoint");
  Point m = skel.root_meet(a, b);

  std::vector<PathArc> down_arcs;
  std::vector<VertexId> down_verts;
  climb(skel, a, m, down_arcs, down_verts);

  std::vector<PathArc> up_arcs;
  std::vector<VertexId> up_verts;
  climb(skel, b, m, up_arcs, up_verts);

  PathRepr path;
  path.a_ = a;
  path.b_ = b;
  path.arcs_ = std::move(down_arcs);
  path.vertices_ = std::move(down_verts);

  // Splice in the b side reversed; the shared meet vertex appears once.
  if (m.is_vertex() && !up_verts.empty()) up_verts.pop_back();
  for (auto it = up_arcs.rbegin(); it != up_arcs.rend(); ++it)
    path.arcs_.push_back({it->edge, it->to, it->from});
  for (auto it = up_verts.rbegin(); it != up_verts.rend(); ++it) path.vertices_.push_back(*it);

  path.length_ = Rat(0);
  for (const PathArc& arc : path.arcs_)
    path.length_ += arc.to > arc.from ? arc.to - arc.from : arc.from - arc.to;
  return path;
}

PathRepr segment(const OrderView& view, const Point& a, const Point& b) {
  return path_between(*view.skeleton, a, b);
}

bool point_on_segment(const TreeSkeleton& skel, const Point& c, const PathRepr& path) {
  require_point(skel, c, "query point");
  if (path.arcs().empty()) return c == path.start();
  if (c.is_vertex()) {
    const auto& vs = path.vertices();
    return std::find(vs.begin(), vs.end(), c.vertex_id()) != vs.end();
  }
  for (const PathArc& arc : path.arcs()) {
    if (arc.edge != c.edge_id()) continue;
    const Rat& lo = arc.from < arc.to ? arc.from : arc.to;
    const Rat& hi = arc.from < arc.to ? arc.to : arc.from;
    if (lo <= c.offset() && c.offset() <= hi) return true;
  }
  return false;
}

Point point_along(const TreeSkeleton& skel, const PathRepr& path, const Rat& along) {
  if (along < 0 || along > path.length())
    throw std::invalid_argument("arc distance " + format_rational(along) + " outside a path of length " +
                                format_rational(path.length()));
  if (path.arcs().empty()) return path.start();
  Rat covered(0);
  for (const PathArc& arc : path.arcs()) {
    Rat len = arc.to > arc.from ? arc.to - arc.from : arc.from - arc.to;
    if (along <= covered + len) {
      Rat step = along - covered;
      Rat off = arc.to > arc.from ? Rat(arc.from + step) : Rat(arc.from - step);
      return skel.point_at_offset(arc.edge, off);
    }
    covered += len;
  }
  return path.end();  // unreachable: the loop covers along == length
}

}  // namespace treetopo
