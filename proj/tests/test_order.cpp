#include <doctest.h>

#include <array>
#include <stdexcept>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "treetopo/harness.hpp"
#include "treetopo/order.hpp"

using namespace treetopo;
using treetopo::testing::GraphOracle;
using treetopo::testing::pt;
using treetopo::testing::y_tree;

TEST_CASE("rebased order relates points through the base") {
  auto t = y_tree();
  Point r = pt(t, "r"), v = pt(t, "v"), a = pt(t, "a"), b = pt(t, "b");

  OrderView from_r = root_view(t);
  CHECK(leq(from_r, v, a));
  CHECK_FALSE(leq(from_r, a, b));

  OrderView from_a = reroot(t, a);
  CHECK(leq(from_a, v, b));
  CHECK(leq(from_a, v, r));
  CHECK_FALSE(leq(from_a, r, b));
  CHECK(leq(from_a, a, r));  // the base precedes everything
  CHECK(lt(from_a, v, b));
  CHECK_FALSE(lt(from_a, v, v));

  OrderView from_mid = reroot(t, t->parse_point("v-b@1/2"));
  CHECK(leq(from_mid, v, a));
  CHECK(leq(from_mid, v, r));
  CHECK_FALSE(leq(from_mid, b, r));
}

TEST_CASE("meets are greatest lower bounds under any base") {
  auto t = y_tree();
  Point r = pt(t, "r"), v = pt(t, "v"), a = pt(t, "a"), b = pt(t, "b");

  CHECK(meet(root_view(t), a, b) == v);
  CHECK(meet(root_view(t), r, b) == r);
  CHECK(meet(reroot(t, a), r, b) == v);
  CHECK(meet(reroot(t, b), r, a) == v);
  CHECK(meet(reroot(t, v), r, b) == v);

  // Interior base on the long edge: meets may land at interior points.
  Point mid = t->parse_point("v-b@1/2");
  CHECK(meet(reroot(t, b), mid, a) == mid);
  CHECK(meet(reroot(t, mid), a, r) == v);
  CHECK(meet(reroot(t, a), mid, b) == mid);
}

TEST_CASE("infimum folds meet over a list") {
  auto t = y_tree();
  Point r = pt(t, "r"), v = pt(t, "v"), a = pt(t, "a"), b = pt(t, "b");
  std::array<Point, 3> pts{r, a, b};
  CHECK(infimum(root_view(t), pts) == r);
  std::array<Point, 3> deep{a, b, v};
  CHECK(infimum(root_view(t), deep) == v);
  CHECK(infimum(reroot(t, a), std::array<Point, 2>{r, b}) == v);
  CHECK(infimum(root_view(t), std::array<Point, 1>{b}) == b);
  CHECK_THROWS_AS(infimum(root_view(t), std::span<const Point>{}), std::invalid_argument);
}

TEST_CASE("median is the common point of the three pairwise segments") {
  auto t = y_tree();
  Point r = pt(t, "r"), v = pt(t, "v"), a = pt(t, "a"), b = pt(t, "b");
  CHECK(median(*t, r, a, b) == v);
  CHECK(median(*t, a, a, b) == a);
  CHECK(median(*t, r, v, b) == v);
  Point mid = t->parse_point("v-b@1/2");
  CHECK(median(*t, mid, a, b) == mid);
}

TEST_CASE("segments materialize arcs, vertices and length") {
  auto t = y_tree();
  Point r = pt(t, "r"), a = pt(t, "a"), b = pt(t, "b");

  PathRepr p = path_between(*t, a, b);
  CHECK(p.length() == Rat(3));
  CHECK(p.arcs().size() == 2);
  CHECK(p.vertices().size() == 3);  // a, v, b
  CHECK(p.start() == a);
  CHECK(p.end() == b);

  // Interior endpoints clip the arcs.
  Point mid = t->parse_point("v-b@1/2");
  PathRepr q = path_between(*t, r, mid);
  CHECK(q.length() == Rat(3) / 2);
  CHECK(q.arcs().size() == 2);
  CHECK(q.vertices().size() == 2);  // r, v

  PathRepr zero = path_between(*t, mid, mid);
  CHECK(zero.length() == Rat(0));
  CHECK(zero.arcs().empty());

  // The same point set regardless of the view used to decompose it.
  CHECK(segment(reroot(t, b), a, r).length() == Rat(2));
}

TEST_CASE("segment membership and interpolation") {
  auto t = y_tree();
  Point r = pt(t, "r"), v = pt(t, "v"), a = pt(t, "a"), b = pt(t, "b");

  PathRepr p = path_between(*t, a, b);
  CHECK(point_on_segment(*t, v, p));
  CHECK(point_on_segment(*t, t->parse_point("v-b@1/2"), p));
  CHECK_FALSE(point_on_segment(*t, r, p));
  CHECK_FALSE(point_on_segment(*t, t->parse_point("r-v@1/2"), p));

  CHECK(point_along(*t, p, Rat(0)) == a);
  CHECK(point_along(*t, p, Rat(1)) == v);
  CHECK(point_along(*t, p, Rat(3) / 2) == t->parse_point("v-b@1/2"));
  CHECK(point_along(*t, p, Rat(3)) == b);
  CHECK_THROWS_AS(point_along(*t, p, Rat(4)), std::invalid_argument);
  CHECK_THROWS_AS(point_along(*t, p, Rat(-1)), std::invalid_argument);
}

TEST_CASE("order, meet and distance agree with the graph reference") {
  GeneratorConfig config;
  config.seed = 42;
  config.max_vertices = 8;
  Rng rng(config.seed);
  for (int trial = 0; trial < 25; ++trial) {
    auto skel = generate_skeleton(config, rng);
    Point base = random_point(*skel, rng, config.max_denominator);
    Point x = random_point(*skel, rng, config.max_denominator);
    Point y = random_point(*skel, rng, config.max_denominator);
    GraphOracle oracle(*skel, {base, x, y});
    OrderView view = reroot(skel, base);

    CHECK(leq(view, x, y) == oracle.leq(base, x, y));
    CHECK(meet(view, x, y) == oracle.meet(base, x, y));
    CHECK(skel->distance(x, y) == oracle.distance(x, y));
    CHECK(path_between(*skel, x, y).length() == oracle.distance(x, y));

    // Every oracle node on the trail lies on the segment, and no other does.
    PathRepr path = path_between(*skel, x, y);
    for (const Point& node : oracle.nodes()) {
      CHECK(point_on_segment(*skel, node, path) == oracle.on_path(node, x, y));
    }
  }
}
