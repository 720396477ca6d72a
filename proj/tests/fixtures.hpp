#pragma once

#include <memory>
#include <string>

#include "treetopo/order.hpp"

namespace treetopo::testing {

// Y-shaped tree: root r, branch vertex v, leaves a and b.
//   r -- v : 1,  v -- a : 1,  v -- b : 2
inline std::shared_ptr<const TreeSkeleton> y_tree() {
  TreeSkeleton::Spec spec;
  spec.vertex_names = {"r", "v", "a", "b"};
  spec.root_name = "r";
  spec.edges = {{"r", "v", Rat(1)}, {"v", "a", Rat(1)}, {"v", "b", Rat(2)}};
  return TreeSkeleton::build(spec);
}

// Path r -- m -- x with unit lengths.
inline std::shared_ptr<const TreeSkeleton> path_tree() {
  TreeSkeleton::Spec spec;
  spec.vertex_names = {"r", "m", "x"};
  spec.root_name = "r";
  spec.edges = {{"r", "m", Rat(1)}, {"m", "x", Rat(1)}};
  return TreeSkeleton::build(spec);
}

// A single isolated root vertex.
inline std::shared_ptr<const TreeSkeleton> dot_tree() {
  TreeSkeleton::Spec spec;
  spec.vertex_names = {"r"};
  spec.root_name = "r";
  return TreeSkeleton::build(spec);
}

inline Point pt(const std::shared_ptr<const TreeSkeleton>& skel, const std::string& name) {
  return skel->parse_point(name);
}

}  // namespace treetopo::testing
