#include <doctest.h>

#include <stdexcept>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "treetopo/harness.hpp"
#include "treetopo/tangent.hpp"

using namespace treetopo;
using treetopo::testing::GraphOracle;
using treetopo::testing::pt;
using treetopo::testing::y_tree;

TEST_CASE("same-class relation on the worked tree") {
  auto t = y_tree();
  Point r = pt(t, "r"), v = pt(t, "v"), a = pt(t, "a"), b = pt(t, "b");

  CHECK_FALSE(same_class(*t, a, b, v));
  CHECK_FALSE(same_class(*t, a, r, v));
  CHECK(same_class(*t, b, t->parse_point("v-b@1/2"), v));
  CHECK(same_class(*t, a, a, v));

  // At an edge-interior anchor only two sides exist.
  Point mid = t->parse_point("v-b@1/2");
  CHECK(same_class(*t, a, r, mid));
  CHECK(same_class(*t, a, v, mid));
  CHECK_FALSE(same_class(*t, a, b, mid));
  CHECK(same_class(*t, b, t->parse_point("v-b@3/2"), mid));

  CHECK_THROWS_AS(same_class(*t, v, a, v), std::invalid_argument);
  CHECK_THROWS_AS(same_class(*t, a, v, v), std::invalid_argument);
}

TEST_CASE("class atoms expose anchor, direction and membership") {
  auto t = y_tree();
  Point r = pt(t, "r"), v = pt(t, "v"), a = pt(t, "a"), b = pt(t, "b");

  TangentClassAtom above = tangent_class(*t, r, v);
  CHECK(above.anchor() == v);
  CHECK(above.contains(*t, r));
  CHECK(above.contains(*t, t->parse_point("r-v@1/2")));
  CHECK_FALSE(above.contains(*t, a));
  CHECK_FALSE(above.contains(*t, v));

  CHECK(tangent_class(*t, b, v) == tangent_class(*t, t->parse_point("v-b@1/2"), v));
  CHECK_FALSE(tangent_class(*t, a, v) == tangent_class(*t, b, v));
  CHECK_THROWS_AS(tangent_class(*t, v, v), std::invalid_argument);
}

TEST_CASE("the classes at an anchor partition the rest of the realization") {
  auto t = y_tree();
  Point v = pt(t, "v");

  TangentSpace at_v = tangent_space(*t, v);
  CHECK(at_v.classes.size() == 3);  // degree of v

  TangentSpace at_mid = tangent_space(*t, t->parse_point("v-b@1/2"));
  CHECK(at_mid.classes.size() == 2);  // interior anchors split the edge in two

  TangentSpace at_leaf = tangent_space(*t, pt(t, "a"));
  CHECK(at_leaf.classes.size() == 1);

  // Every non-anchor cut point lies in exactly one class.
  for (const Point& p : canonical_cut_points(*t, {})) {
    if (p == v) continue;
    int hits = 0;
    for (const auto& atom : at_v.classes) hits += atom.contains(*t, p) ? 1 : 0;
    CHECK(hits == 1);
  }
}

TEST_CASE("isolated vertex has an empty tangent space") {
  auto t = treetopo::testing::dot_tree();
  TangentSpace space = tangent_space(*t, pt(t, "r"));
  CHECK(space.classes.empty());
}

TEST_CASE("same-class matches reachability with the anchor removed") {
  GeneratorConfig config;
  config.seed = 7;
  config.max_vertices = 8;
  Rng rng(config.seed);
  for (int trial = 0; trial < 25; ++trial) {
    auto skel = generate_skeleton(config, rng);
    Point anchor = random_point(*skel, rng, config.max_denominator);
    GraphOracle oracle(*skel, {anchor});
    for (const Point& x : oracle.nodes()) {
      for (const Point& y : oracle.nodes()) {
        if (x == anchor || y == anchor) continue;
        CHECK(same_class(*skel, x, y, anchor) == oracle.connected_avoiding(x, y, anchor));
        CHECK(same_class(*skel, x, y, anchor) ==
              (tangent_class(*skel, x, anchor) == tangent_class(*skel, y, anchor)));
        CHECK(tangent_class(*skel, x, anchor).contains(*skel, y) == same_class(*skel, x, y, anchor));
      }
    }
  }
}
