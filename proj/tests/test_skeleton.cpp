#include <doctest.h>

#include <stdexcept>

#include "fixtures.hpp"
#include "treetopo/skeleton.hpp"

using namespace treetopo;
using treetopo::testing::pt;
using treetopo::testing::y_tree;

namespace {

std::shared_ptr<const TreeSkeleton> from_text(const std::string& text) { return parse_tree(text); }

}  // namespace

TEST_CASE("the worked four-vertex tree indexes as expected") {
  auto t = y_tree();
  CHECK(t->vertex_count() == 4);
  CHECK(t->edge_count() == 3);
  CHECK(t->vertex_name(t->root()) == "r");
  CHECK(t->parent(*t->find_vertex("v")) == *t->find_vertex("r"));
  CHECK(t->parent(*t->find_vertex("a")) == *t->find_vertex("v"));
  CHECK(t->parent(t->root()) == kNoVertex);
  CHECK(t->vertex_depth(*t->find_vertex("b")) == Rat(3));
  CHECK(t->distance(pt(t, "a"), pt(t, "b")) == Rat(3));
  CHECK(t->distance(pt(t, "r"), pt(t, "r")) == Rat(0));
}

TEST_CASE("point parsing canonicalizes and validates") {
  auto t = y_tree();
  Point p = t->parse_point("v-b@1/2");
  CHECK(p.is_interior());
  CHECK(p.offset() == Rat(1) / 2);
  CHECK(t->point_name(p) == "v-b@1/2");

  // Offsets are measured from the upper endpoint; naming from the lower
  // endpoint flips the offset.
  CHECK(t->parse_point("b-v@3/2") == t->parse_point("v-b@1/2"));

  // Snapping to the endpoints yields vertex points.
  CHECK(t->parse_point("v-b@0") == pt(t, "v"));
  CHECK(t->parse_point("v-b@2") == pt(t, "b"));

  CHECK_THROWS_AS(t->parse_point("v-b@3"), ParseError);
  CHECK_THROWS_AS(t->parse_point("v-b@-1/2"), ParseError);
  CHECK_THROWS_AS(t->parse_point("r-a@1/2"), ParseError);  // not an edge
  CHECK_THROWS_AS(t->parse_point("z"), ParseError);
  CHECK_THROWS_AS(t->parse_point("v-b@x"), ParseError);
}

TEST_CASE("root order and meets on the worked tree") {
  auto t = y_tree();
  Point r = pt(t, "r"), v = pt(t, "v"), a = pt(t, "a"), b = pt(t, "b");
  CHECK(t->root_leq(r, a));
  CHECK(t->root_leq(v, b));
  CHECK_FALSE(t->root_leq(a, b));
  CHECK_FALSE(t->root_leq(b, a));
  CHECK(t->root_leq(a, a));
  CHECK(t->root_meet(a, b) == v);
  CHECK(t->root_meet(a, v) == v);
  CHECK(t->root_meet(r, b) == r);

  Point mid = t->parse_point("v-b@1/2");
  CHECK(t->root_leq(v, mid));
  CHECK(t->root_leq(mid, b));
  CHECK_FALSE(t->root_leq(mid, a));
  CHECK(t->root_meet(mid, b) == mid);
  CHECK(t->root_meet(mid, a) == v);

  // Two interiors of one edge compare by offset.
  Point lo = t->parse_point("v-b@1/4"), hi = t->parse_point("v-b@7/4");
  CHECK(t->root_leq(lo, hi));
  CHECK_FALSE(t->root_leq(hi, lo));
  CHECK(t->root_meet(lo, hi) == lo);
}

TEST_CASE("line format parses and rejects malformed trees") {
  auto good = from_text(
      "# demo\n"
      "vertex r root\n"
      "vertex v\n"
      "edge r v 1\n");
  CHECK(good->vertex_count() == 2);

  CHECK_THROWS_WITH_AS(parse_tree("vertex r root\nvertex r\n"), doctest::Contains("duplicate vertex"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_tree("vertex r\n"), doctest::Contains("root"), ParseError);
  CHECK_THROWS_WITH_AS(parse_tree("vertex r root\nvertex v root\n"), doctest::Contains("root"), ParseError);
  CHECK_THROWS_WITH_AS(parse_tree("vertex r root\nedge r z 1\n"), doctest::Contains("unknown vertex"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_tree("vertex r root\nedge r r 1\n"), doctest::Contains("self-loop"), ParseError);
  CHECK_THROWS_WITH_AS(parse_tree("vertex r root\nvertex v\nedge r v 0\n"), doctest::Contains("positive"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_tree("vertex r root\nvertex v\nedge r v 1\nedge v r 2\n"),
                       doctest::Contains("duplicate edge"), ParseError);
  CHECK_THROWS_WITH_AS(parse_tree("vertex r root\nvertex v\n"), doctest::Contains("disconnected"),
                       ParseError);
  CHECK_THROWS_WITH_AS(
      parse_tree("vertex r root\nvertex u\nvertex v\nedge r u 1\nedge r v 1\nedge u v 1\n"),
      doctest::Contains("cycle"), ParseError);
  CHECK_THROWS_WITH_AS(parse_tree("vertex r root\nvertex v\nedge r v x\n"), doctest::Contains("line 3"),
                       ParseError);
}

TEST_CASE("parenthesized format matches the line format") {
  auto paren = from_text("((a:1,b:2)v:1)r;");
  auto ref = y_tree();
  CHECK(paren->vertex_count() == 4);
  CHECK(paren->to_text() != ref->to_text());  // declaration order differs
  CHECK(paren->distance(pt(paren, "a"), pt(paren, "b")) == Rat(3));
  CHECK(paren->parse_point("r").is_vertex());
  CHECK(paren->vertex_name(paren->root()) == "r");

  CHECK_THROWS_AS(parse_tree("(v:1)r:1;"), ParseError);  // root carries a length
  CHECK_THROWS_AS(parse_tree("((a:1)v:1)r"), ParseError);  // missing ';'
  CHECK_THROWS_AS(parse_tree("(v)r;"), ParseError);        // missing length
  CHECK_THROWS_AS(parse_tree("((a:1,v:1)r;"), ParseError);
}

TEST_CASE("compact serialization round-trips") {
  auto t = y_tree();
  std::string compact = t->to_compact();
  CHECK(compact == "r*,v,a,b;r-v:1,v-a:1,v-b:2");
  CHECK(parse_tree_compact(compact)->to_compact() == compact);
  CHECK(parse_tree(t->to_text())->to_compact() == compact);
  CHECK_THROWS_AS(parse_tree_compact("r,v;r-v:1"), ParseError);   // no root marker
  CHECK_THROWS_AS(parse_tree_compact("r*,v"), ParseError);        // no divider
  CHECK_THROWS_AS(parse_tree_compact("r*,v;r-v"), ParseError);    // no length
}

TEST_CASE("canonical cut points cover vertices, anchors and piece midpoints") {
  auto t = y_tree();
  auto cuts = canonical_cut_points(*t, {});
  // Each of the three edges contributes one midpoint; plus four vertices.
  CHECK(cuts.size() == 7);
  for (const auto& c : cuts) CHECK(t->valid_point(c));

  Point anchor = t->parse_point("v-b@1/2");
  auto refined = canonical_cut_points(*t, {anchor});
  // The v-b edge now holds the anchor plus midpoints at 1/4 and 5/4.
  CHECK(refined.size() == 9);
  auto has = [&](const std::string& name) {
    Point want = t->parse_point(name);
    for (const auto& c : refined) {
      if (c == want) return true;
    }
    return false;
  };
  CHECK(has("v-b@1/2"));
  CHECK(has("v-b@1/4"));
  CHECK(has("v-b@5/4"));
  CHECK_FALSE(has("v-b@1"));
}
