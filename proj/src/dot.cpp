#include "treetopo/dot.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

namespace treetopo {

std::string to_dot(const TreeSkeleton& skel, std::span<const Point> marks) {
  std::map<EdgeId, std::vector<Rat>> split;
  std::vector<bool> marked_vertex(skel.vertex_count(), false);
  for (const Point& p : marks) {
    if (!skel.valid_point(p)) throw std::invalid_argument("mark does not lie on this skeleton");
    if (p.is_vertex())
      marked_vertex[p.vertex_id()] = true;
    else
      split[p.edge_id()].push_back(p.offset());
  }
  for (auto& [e, offs] : split) {
    std::sort(offs.begin(), offs.end());
    offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
  }

  std::ostringstream out;
  out << "graph tree {\n";
  out << "  node [shape=circle fontsize=11];\n";
  for (VertexId v = 0; v < skel.vertex_count(); ++v) {
    out << "  \"" << skel.vertex_name(v) << "\"";
    bool is_root = v == skel.root();
    if (is_root && marked_vertex[v])
      out << " [shape=doublecircle style=filled fillcolor=gray85]";
    else if (is_root)
      out << " [shape=doublecircle]";
    else if (marked_vertex[v])
      out << " [style=filled fillcolor=gray85]";
    out << ";\n";
  }
  for (const auto& [e, offs] : split) {
    for (const Rat& off : offs) {
      std::string name = skel.point_name(Point::at_interior(e, off));
      out << "  \"" << name << "\" [shape=point width=0.1 xlabel=\"" << name << "\"];\n";
    }
  }
  for (EdgeId e = 0; e < skel.edge_count(); ++e) {
    const EdgeRec& rec = skel.edge(e);
    auto it = split.find(e);
    if (it == split.end()) {
      out << "  \"" << skel.vertex_name(rec.upper) << "\" -- \"" << skel.vertex_name(rec.lower)
          << "\" [label=\"" << format_rational(rec.length) << "\"];\n";
      continue;
    }
    std::string prev = skel.vertex_name(rec.upper);
    Rat prev_off(0);
    for (const Rat& off : it->second) {
      std::string name = skel.point_name(Point::at_interior(e, off));
      out << "  \"" << prev << "\" -- \"" << name << "\" [label=\"" << format_rational(off - prev_off)
          << "\"];\n";
      prev = name;
      prev_off = off;
    }
    out << "  \"" << prev << "\" -- \"" << skel.vertex_name(rec.lower) << "\" [label=\""
        << format_rational(rec.length - prev_off) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace treetopo
