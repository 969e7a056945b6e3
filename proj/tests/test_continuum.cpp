#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "mobsync/continuum.hpp"
#include "mobsync/error.hpp"
#include "test_util.hpp"

using namespace mobsync;
using namespace testutil;

TEST_CASE("Point::make normalises endpoint offsets to vertices") {
  Multigraph g = load(kUnitEdge);
  EdgeId e = g.edge_index("e");
  Point a = Point::make(g, e, Rational(0));
  CHECK(a.is_vertex());
  CHECK(a == vp(g, "A"));
  Point b = Point::make(g, e, Rational(1));
  CHECK(b == vp(g, "B"));
  Point mid = Point::make(g, e, rat(1, 2));
  CHECK_FALSE(mid.is_vertex());
  CHECK(mid.edge == e);
  CHECK(mid.offset == rat(1, 2));

  CHECK(code_of([&] { Point::make(g, e, Rational(-1)); }) == Errc::BadPoint);
  CHECK(code_of([&] { Point::make(g, e, Rational(2)); }) == Errc::BadPoint);
}

TEST_CASE("points order vertices first, then by edge and offset") {
  Multigraph g = load(kPath3);
  Point a = vp(g, "A");
  Point c = vp(g, "C");
  Point ab_half = ep(g, "ab", rat(1, 2));
  Point bc_third = ep(g, "bc", rat(1, 3));
  CHECK(a < c);
  CHECK(c < ab_half);
  CHECK(ab_half < bc_third);
  CHECK(ep(g, "ab", rat(1, 4)) < ab_half);
  CHECK(a == vp(g, "A"));
  CHECK_FALSE(a == c);
}

TEST_CASE("point_to_string names vertices and edge offsets") {
  Multigraph g = load(kUnitEdge);
  CHECK(point_to_string(g, vp(g, "A")) == "A");
  CHECK(point_to_string(g, ep(g, "e", rat(1, 2))) == "e@1/2");
}

TEST_CASE("reach measures distance to the vertex ahead") {
  Multigraph g = load(kPath21GenA);
  Direction ab_to_b = toward(g, "ab", "B");

  auto [from_a, hit_b] = reach(g, vp(g, "A"), ab_to_b);
  CHECK(from_a == 2);
  CHECK(hit_b == g.vertex_index("B"));

  auto [fwd, v_fwd] = reach(g, ep(g, "ab", rat(1, 2)), ab_to_b);
  CHECK(fwd == rat(3, 2));
  CHECK(v_fwd == g.vertex_index("B"));

  auto [back, v_back] = reach(g, ep(g, "ab", rat(1, 2)), ab_to_b.reverse());
  CHECK(back == rat(1, 2));
  CHECK(v_back == g.vertex_index("A"));

  // Direction must apply at the point.
  CHECK(code_of([&] { reach(g, vp(g, "C"), ab_to_b); }) == Errc::BadPoint);
  CHECK(code_of([&] {
          reach(g, ep(g, "ab", rat(1, 2)), toward(g, "bc", "C"));
        }) == Errc::BadPoint);
}

TEST_CASE("advance moves along a direction without crossing vertices") {
  Multigraph g = load(kUnitEdge);
  Direction d = toward(g, "e", "B");
  Point start = vp(g, "A");

  CHECK(advance(g, start, d, Rational(0)) == start);
  CHECK(advance(g, start, d, rat(1, 3)) == ep(g, "e", rat(1, 3)));
  CHECK(advance(g, start, d, Rational(1)) == vp(g, "B"));
  CHECK(advance(g, ep(g, "e", rat(1, 4)), d, rat(1, 2)) ==
        ep(g, "e", rat(3, 4)));

  CHECK(code_of([&] { advance(g, start, d, Rational(2)); }) ==
        Errc::OvershootsEvent);
  CHECK(code_of([&] { advance(g, start, d, Rational(-1)); }) ==
        Errc::BadPoint);
  CHECK(code_of([&] { advance(g, vp(g, "B"), d, rat(1, 2)); }) ==
        Errc::BadPoint);
}

TEST_CASE("point_distance is the continuum shortest path") {
  Multigraph g = load(kUnitEdge);
  CHECK(point_distance(g, vp(g, "A"), vp(g, "B")) == 1);
  CHECK(point_distance(g, vp(g, "A"), ep(g, "e", rat(1, 3))) == rat(1, 3));
  CHECK(point_distance(g, ep(g, "e", rat(1, 4)), ep(g, "e", rat(3, 4))) ==
        rat(1, 2));
  CHECK(point_distance(g, vp(g, "A"), vp(g, "A")) == 0);

  // On a cycle the shorter way around wins.
  Multigraph par = load(kParallel);
  Point p_quarter = ep(par, "p", rat(1, 4));
  Point q_quarter = ep(par, "q", rat(1, 4));
  CHECK(point_distance(par, p_quarter, q_quarter) == rat(1, 2));
  Point p_late = ep(par, "p", rat(3, 4));
  CHECK(point_distance(par, p_quarter, p_late) == rat(1, 2));

  Multigraph tri = load(kTriangle);
  CHECK(point_distance(tri, vp(tri, "A"), ep(tri, "bc", rat(1, 2))) ==
        rat(3, 2));
  CHECK(point_distance(tri, ep(tri, "ab", rat(1, 2)),
                       ep(tri, "ca", rat(1, 2))) == 1);
}
