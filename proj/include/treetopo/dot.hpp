#pragma once

#include <span>
#include <string>

#include "treetopo/skeleton.hpp"

namespace treetopo {

// Graphviz rendering of the skeleton: round nodes, the root doubled, edge
// labels carrying exact lengths. Marked points at vertices are filled; marked
// edge-interior points become small auxiliary nodes splitting their edge with
// the exact partial lengths.
std::string to_dot(const TreeSkeleton& skel, std::span<const Point> marks = {});

}  // namespace treetopo
