#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "treetopo/rational.hpp"

namespace treetopo {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// An exact location in the realization of a skeleton: either a vertex, or an
// interior point of an edge at a rational offset measured from the edge's
// upper (root-closer) endpoint. Canonical form only: interior offsets are
// strictly between 0 and the edge length, so each location has exactly one
// representation. Build points through TreeSkeleton, which canonicalizes.
class Point {
 public:
  Point() = default;

  static Point at_vertex(VertexId v) {
    Point p;
    p.interior_ = false;
    p.v_ = v;
    return p;
  }

  // `offset` must already be strictly inside the edge.
  static Point at_interior(EdgeId e, Rat offset_from_upper) {
    Point p;
    p.interior_ = true;
    p.e_ = e;
    p.off_ = std::move(offset_from_upper);
    return p;
  }

  bool is_vertex() const { return !interior_; }
  bool is_interior() const { return interior_; }
  VertexId vertex_id() const { return v_; }
  EdgeId edge_id() const { return e_; }
  const Rat& offset() const { return off_; }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.interior_ != b.interior_) return false;
    if (a.interior_) return a.e_ == b.e_ && a.off_ == b.off_;
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

  // Arbitrary strict order so points can key sorted containers: vertices by
  // id first, then edge interiors by (edge, offset).
  friend bool operator<(const Point& a, const Point& b) {
    if (a.interior_ != b.interior_) return !a.interior_;
    if (!a.interior_) return a.v_ < b.v_;
    if (a.e_ != b.e_) return a.e_ < b.e_;
    return a.off_ < b.off_;
  }

 private:
  bool interior_ = false;
  VertexId v_ = 0;
  EdgeId e_ = 0;
  Rat off_;
};

struct EdgeRec {
  VertexId a = 0;  // endpoints as declared
  VertexId b = 0;
  Rat length;
  VertexId upper = 0;  // root-closer endpoint
  VertexId lower = 0;
};

// A finite rooted tree with strictly positive rational edge lengths. The
// realization glues one closed arc per edge; all point-level queries are
// relative to that geometric object. Immutable once built.
class TreeSkeleton {
 public:
  struct Spec {
    struct EdgeSpec {
      std::string a, b;
      Rat length;
    };
    std::vector<std::string> vertex_names;
    std::string root_name;
    std::vector<EdgeSpec> edges;
  };

  // Validates and orients the input; throws ParseError on duplicate names,
  // missing root, bad endpoints, non-positive lengths, cycles, or a
  // disconnected graph.
  static std::shared_ptr<const TreeSkeleton> build(const Spec& spec);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  VertexId root() const { return root_; }
  const std::string& vertex_name(VertexId v) const { return names_[v]; }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  const EdgeRec& edge(EdgeId e) const { return edges_[e]; }
  std::optional<EdgeId> find_edge(VertexId x, VertexId y) const;
  const std::vector<EdgeId>& incident_edges(VertexId v) const { return incident_[v]; }
  VertexId parent(VertexId v) const { return parent_[v]; }
  EdgeId parent_edge(VertexId v) const { return parent_edge_[v]; }
  const Rat& vertex_depth(VertexId v) const { return depth_[v]; }

  Point vertex_point(VertexId v) const;

  // Snaps offsets 0 and length to the corresponding endpoint vertex; rejects
  // offsets outside [0, length].
  Point point_at_offset(EdgeId e, const Rat& offset_from_upper) const;

  // Builds a point from a raw (endpoint, endpoint, offset-from-first) triple
  // in either endpoint order.
  Point canonical_point(std::string_view v1, std::string_view v2, const Rat& offset_from_v1) const;

  // "name" for a vertex, "upper-lower@offset" for an edge interior.
  Point parse_point(std::string_view text) const;
  std::string point_name(const Point& p) const;

  // True when the ids/offset reference this skeleton and are canonical.
  bool valid_point(const Point& p) const;

  // Vertex bounding an edge-interior point from the root side / away side;
  // for a vertex point both collapse to the vertex itself.
  VertexId up_vertex(const Point& p) const;
  VertexId down_vertex(const Point& p) const;

  // Order and metric primitives relative to the root.
  Rat depth(const Point& p) const;  // arc length from the root
  bool ancestor_or_self(VertexId u, VertexId w) const;
  VertexId vertex_lca(VertexId u, VertexId w) const;
  bool root_leq(const Point& p, const Point& q) const;  // p lies on [root, q]
  Point root_meet(const Point& p, const Point& q) const;
  Rat distance(const Point& p, const Point& q) const;

  // Multi-line text form (vertex/edge lines) and the single-token compact
  // form used inside failure records.
  std::string to_text() const;
  std::string to_compact() const;

 private:
  TreeSkeleton() = default;
  void index_from_root();

  std::vector<std::string> names_;
  VertexId root_ = 0;
  std::vector<EdgeRec> edges_;
  std::vector<std::vector<EdgeId>> incident_;
  std::vector<VertexId> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<Rat> depth_;
  std::vector<std::uint32_t> tin_, tout_;  // DFS intervals for ancestor tests
};

// Parses either the line-oriented format ("vertex a [root]" / "edge a b 1/2",
// '#' comments) or, when the first nonblank character is '(', the
// parenthesized suffix-label form "((a:1,b:2)v:1)r;".
std::shared_ptr<const TreeSkeleton> parse_tree(std::string_view text);

std::shared_ptr<const TreeSkeleton> parse_tree_compact(std::string_view token);

// The canonical finite cut set: all vertices, all anchor points, and the
// midpoint of every maximal anchor-free sub-arc. Membership in any set built
// from segments/classes anchored at `anchors` is constant between consecutive
// cut points, so exact quantification over the realization reduces to this
// list. Sorted by Point order; duplicates removed.
std::vector<Point> canonical_cut_points(const TreeSkeleton& skel, const std::vector<Point>& anchors);

}  // namespace treetopo
