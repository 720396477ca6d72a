#include <doctest.h>

#include <array>
#include <stdexcept>

#include "fixtures.hpp"
#include "treetopo/region.hpp"

using namespace treetopo;
using treetopo::testing::dot_tree;
using treetopo::testing::pt;
using treetopo::testing::y_tree;

TEST_CASE("region expressions parse, evaluate and print canonically") {
  auto t = y_tree();
  OrderView view = root_view(t);
  Point r = pt(t, "r"), v = pt(t, "v"), a = pt(t, "a"), b = pt(t, "b");

  Region up_v = parse_region(view, "up(v)");
  CHECK(up_v.contains(v));
  CHECK(up_v.contains(a));
  CHECK(up_v.contains(t->parse_point("v-b@3/2")));
  CHECK_FALSE(up_v.contains(r));
  CHECK_FALSE(up_v.contains(t->parse_point("r-v@1/2")));

  CHECK_FALSE(parse_region(view, "strictup(v)").contains(v));
  CHECK(parse_region(view, "strictup(v)").contains(a));
  CHECK(parse_region(view, "point(v-b@1/2)").contains(t->parse_point("v-b@1/2")));
  CHECK_FALSE(parse_region(view, "point(v-b@1/2)").contains(b));
  CHECK(parse_region(view, "whole").contains(r));
  CHECK_FALSE(parse_region(view, "empty").contains(r));
  CHECK(parse_region(view, "class(a, v)").contains(t->parse_point("v-a@1/2")));
  CHECK_FALSE(parse_region(view, "class(a, v)").contains(v));
  CHECK(parse_region(view, "up(v) & !up(b)").contains(a));
  CHECK_FALSE(parse_region(view, "up(v) & !up(b)").contains(b));
  CHECK(parse_region(view, "point(r) | point(b)").contains(b));

  // Round-trip: parse, print, reparse, print again.
  for (const char* expr : {
           "class(a,v)|up(b)&!point(v-b@1/2)",
           "(class(a,v)|up(b))&!empty",
           "!(up(v)|point(r))",
           "whole&empty|!whole",
           "strictup(r-v@1/2)",
       }) {
    Region region = parse_region(view, expr);
    std::string printed = region.to_string();
    CHECK(printed == expr);
    CHECK(parse_region(view, printed).to_string() == printed);
  }

  // Whitespace is insignificant; printing normalizes it away.
  CHECK(parse_region(view, "  up( v )  &  ! point( b ) ").to_string() == "up(v)&!point(b)");

  CHECK_THROWS_AS(parse_region(view, ""), ParseError);
  CHECK_THROWS_AS(parse_region(view, "up(z)"), ParseError);
  CHECK_THROWS_AS(parse_region(view, "class(a)"), ParseError);
  CHECK_THROWS_AS(parse_region(view, "class(a,v,b)"), ParseError);
  CHECK_THROWS_AS(parse_region(view, "blob"), ParseError);
  CHECK_THROWS_AS(parse_region(view, "up(a))"), ParseError);
  CHECK_THROWS_AS(parse_region(view, "up(a)|"), ParseError);
  CHECK_THROWS_AS(parse_region(view, "!"), ParseError);
  CHECK_THROWS_AS(parse_region(view, "(up(a)"), ParseError);
  CHECK_THROWS_AS(parse_region(view, "class(v,v)"), std::invalid_argument);

  CHECK_THROWS_AS(up_v.contains(Point::at_vertex(9)), std::invalid_argument);
}

TEST_CASE("regions refuse to mix views") {
  auto t = y_tree();
  Region bound_r = parse_region(root_view(t), "up(v)");
  Region bound_b = parse_region(reroot(t, pt(t, "b")), "up(v)");
  CHECK_THROWS_AS(Region::union_of(bound_r, bound_b), std::invalid_argument);
  CHECK_THROWS_AS(Region::intersection_of(bound_r, bound_b), std::invalid_argument);

  auto other = treetopo::testing::path_tree();
  CHECK_THROWS_AS(is_upper_set(bound_r, root_view(other)), std::invalid_argument);
}

TEST_CASE("cut points list vertices, anchors, bases and piece midpoints") {
  auto t = y_tree();
  OrderView view = root_view(t);

  auto names = [&](const std::vector<Point>& pts) {
    std::vector<std::string> out;
    for (const Point& p : pts) out.push_back(t->point_name(p));
    return out;
  };

  CHECK(names(cut_points(parse_region(view, "class(r,v)"))) ==
        std::vector<std::string>{"r", "v", "a", "b", "r-v@1/2", "v-a@1/2", "v-b@1"});
  CHECK(names(cut_points(parse_region(view, "up(v-b@1/2)"))) ==
        std::vector<std::string>{"r", "v", "a", "b", "r-v@1/2", "v-a@1/2", "v-b@1/4", "v-b@1/2",
                                 "v-b@5/4"});
}

TEST_CASE("upward closure is decided exactly with witnesses") {
  auto t = y_tree();
  OrderView from_r = root_view(t);
  OrderView from_v = reroot(t, pt(t, "v"));

  CHECK(is_upper_set(parse_region(from_r, "up(v)"), from_r));
  CHECK(is_upper_set(parse_region(from_r, "strictup(v)"), from_r));
  CHECK(is_upper_set(parse_region(from_r, "point(b)"), from_r));
  CHECK(is_upper_set(parse_region(from_r, "whole"), from_r));
  CHECK(is_upper_set(parse_region(from_r, "empty"), from_r));
  CHECK(is_upper_set(parse_region(from_r, "class(a,v)"), from_r));

  UpperSetWitness w;
  CHECK_FALSE(is_upper_set(parse_region(from_r, "class(r,v)"), from_r, &w));
  CHECK(t->point_name(w.member) == "r");
  CHECK(t->point_name(w.above_nonmember) == "v");

  // The same class is upward closed once the order is rebased at v.
  CHECK(is_upper_set(parse_region(from_r, "class(r,v)"), from_v));

  CHECK_FALSE(is_upper_set(parse_region(from_r, "point(v)"), from_r, &w));
  CHECK(t->point_name(w.member) == "v");
  CHECK_FALSE(is_upper_set(parse_region(from_r, "!up(v)"), from_r, &w));
}

TEST_CASE("directed chains validate against the view") {
  auto t = y_tree();
  OrderView view = root_view(t);
  Point v = pt(t, "v"), b = pt(t, "b");
  Point half = t->parse_point("v-b@1/2"), one = t->parse_point("v-b@1");

  DirectedChain ok{{v, half, one}, b};
  validate_chain(ok, view);
  CHECK(ok.supremum() == b);
  DirectedChain attained{{v, half}, std::nullopt};
  validate_chain(attained, view);
  CHECK(attained.supremum() == half);

  CHECK_THROWS_AS(validate_chain(DirectedChain{{}, std::nullopt}, view), std::invalid_argument);
  CHECK_THROWS_AS(validate_chain(DirectedChain{{b, v}, std::nullopt}, view), std::invalid_argument);
  CHECK_THROWS_AS(validate_chain(DirectedChain{{half}, v}, view), std::invalid_argument);
  CHECK_THROWS_AS(validate_chain(DirectedChain{{v, v}, std::nullopt}, view), std::invalid_argument);
  CHECK_THROWS_AS(validate_chain(DirectedChain{{Point::at_vertex(9)}, std::nullopt}, view),
                  std::invalid_argument);
}

TEST_CASE("inaccessibility by directed joins") {
  auto t = y_tree();
  OrderView view = root_view(t);
  Point v = pt(t, "v"), b = pt(t, "b");
  DirectedChain toward_b{{t->parse_point("v-b@1"), t->parse_point("v-b@3/2")}, b};
  std::array<DirectedChain, 1> chains{toward_b};

  // up(b) = {b}: the chain joins to b from outside.
  InaccessibilityWitness iw;
  CHECK_FALSE(is_inaccessible_by_directed_joins(parse_region(view, "up(b)"), view, chains, &iw));
  CHECK(iw.chain.supremum() == b);

  // strictup(v) catches the chain long before the join.
  CHECK(is_inaccessible_by_directed_joins(parse_region(view, "strictup(v)"), view, chains));

  // Chains whose supremum stays outside are ignored.
  CHECK(is_inaccessible_by_directed_joins(parse_region(view, "up(a)"), view, chains));

  // An attained chain inside the region is inert.
  std::array<DirectedChain, 1> attained{DirectedChain{{v, b}, std::nullopt}};
  CHECK(is_inaccessible_by_directed_joins(parse_region(view, "up(v)"), view, attained));
}

TEST_CASE("the Scott-open decider and its witnesses") {
  auto t = y_tree();
  OrderView from_r = root_view(t);
  OrderView from_v = reroot(t, pt(t, "v"));

  CHECK(is_scott_open(parse_region(from_r, "whole"), from_r));
  CHECK(is_scott_open(parse_region(from_r, "empty"), from_r));
  CHECK(is_scott_open(parse_region(from_r, "strictup(v)"), from_r));
  CHECK(is_scott_open(parse_region(from_r, "class(a,v)"), from_r));
  CHECK(is_scott_open(parse_region(from_r, "strictup(v-b@1/2)"), from_r));

  ScottWitness sw;
  // Not upward closed at all.
  CHECK_FALSE(is_scott_open(parse_region(from_r, "class(r,v)"), from_r, &sw));
  CHECK(sw.kind == ScottWitness::Kind::NotUpper);
  CHECK(t->point_name(sw.member) == "r");
  CHECK(t->point_name(sw.other) == "v");

  // Upward closed but attainable from below: up(v) is reached by chains
  // climbing the r-v edge.
  CHECK_FALSE(is_scott_open(parse_region(from_r, "up(v)"), from_r, &sw));
  CHECK(sw.kind == ScottWitness::Kind::NoPredecessor);
  CHECK(t->point_name(sw.member) == "v");
  CHECK(t->point_name(sw.other) == "r-v@3/4");

  CHECK_FALSE(is_scott_open(parse_region(from_r, "point(b)"), from_r, &sw));
  CHECK(sw.kind == ScottWitness::Kind::NoPredecessor);

  // The r-side class at v is Scott-open only after rebasing at v.
  CHECK(is_scott_open(parse_region(from_r, "class(r,v)"), from_v));

  // up(base) is the whole realization, hence Scott-open.
  CHECK(is_scott_open(parse_region(from_r, "up(r)"), from_r));
}

TEST_CASE("weak-openness witnesses separate members from the boundary") {
  auto t = y_tree();
  OrderView view = root_view(t);
  Point r = pt(t, "r"), b = pt(t, "b");

  // At the base the region must be everything; any other point separates.
  CHECK(t->point_name(weak_open_witness(parse_region(view, "whole"), r, view)) == "v");

  // Otherwise: the midpoint of the cut-free gap below the point.
  CHECK(t->point_name(weak_open_witness(parse_region(view, "strictup(v)"), b, view)) == "v-b@3/2");
  CHECK(t->point_name(weak_open_witness(parse_region(view, "strictup(v)"), t->parse_point("v-a@1/2"),
                                        view)) == "v-a@1/4");
  CHECK(t->point_name(weak_open_witness(parse_region(view, "class(a,v)"), t->parse_point("v-a@1/2"),
                                        view)) == "v-a@1/4");
  CHECK(t->point_name(weak_open_witness(parse_region(view, "whole"), b, view)) == "v-b@3/2");

  // The returned anchor's class around the point stays inside the region.
  Point anchor = weak_open_witness(parse_region(view, "strictup(v)"), b, view);
  TangentClassAtom atom = tangent_class(*t, b, anchor);
  for (const Point& c : cut_points(parse_region(view, "strictup(v)"))) {
    if (atom.contains(*t, c)) CHECK(parse_region(view, "strictup(v)").contains(c));
  }

  CHECK_THROWS_AS(weak_open_witness(parse_region(view, "strictup(v)"), r, view), std::invalid_argument);
  CHECK_THROWS_AS(weak_open_witness(parse_region(view, "up(v)"), b, view), std::invalid_argument);
  CHECK_THROWS_AS(weak_open_witness(parse_region(view, "class(r,v)"), r, view), std::invalid_argument);

  auto lone = dot_tree();
  OrderView lone_view = root_view(lone);
  CHECK_THROWS_AS(weak_open_witness(parse_region(lone_view, "whole"), pt(lone, "r"), lone_view),
                  std::invalid_argument);
}

TEST_CASE("distinct points are separated by disjoint classes") {
  auto t = y_tree();
  Point r = pt(t, "r"), a = pt(t, "a"), b = pt(t, "b");

  auto [left, right] = hausdorff_witness(t, a, b);
  CHECK(left.contains(a));
  CHECK(right.contains(b));
  CHECK_FALSE(left.contains(b));
  CHECK_FALSE(right.contains(a));
  // Anchored at the midpoint of [a, b], which lies at v-b@1/2.
  CHECK_FALSE(left.contains(t->parse_point("v-b@1/2")));
  CHECK_FALSE(right.contains(t->parse_point("v-b@1/2")));
  // Disjoint over the whole cut set.
  for (const Point& c : canonical_cut_points(*t, {t->parse_point("v-b@1/2")})) {
    CHECK_FALSE((left.contains(c) && right.contains(c)));
  }

  auto [up, down] = hausdorff_witness(t, r, t->parse_point("r-v@1/2"));
  CHECK(up.contains(r));
  CHECK(down.contains(t->parse_point("r-v@1/2")));

  CHECK_THROWS_AS(hausdorff_witness(t, a, a), std::invalid_argument);
}
