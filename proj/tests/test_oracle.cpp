#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <set>
#include <string>
#include <utility>

#include "doctest.h"
#include "mobsync/error.hpp"
#include "mobsync/oracle.hpp"
#include "test_util.hpp"

using namespace mobsync;
using namespace testutil;

namespace {

// Unordered endpoint-name pair identifying a path class in assertions.
std::set<std::string> ends(const Multigraph& g, const PathEntry& e) {
  return {g.vertex_name(e.from), g.vertex_name(e.to)};
}

}  // namespace

TEST_CASE("canonical class words identify a path with its reverse") {
  Multigraph g = load(kPath3);
  Word fwd = {toward(g, "ab", "B"), toward(g, "bc", "C")};
  Word bwd = reverse_path(fwd);
  REQUIRE(bwd.size() == 2);
  CHECK(bwd[0] == toward(g, "bc", "B"));
  CHECK(bwd[1] == toward(g, "ab", "A"));
  CHECK(canonical_class(fwd) == canonical_class(bwd));
  CHECK((canonical_class(fwd) == fwd || canonical_class(fwd) == bwd));
}

TEST_CASE("catalog sizes on paths") {
  CHECK(PathCatalog(load(kUnitEdge)).classes().size() == 1);
  CHECK(PathCatalog(load(kPath3)).classes().size() == 3);
  CHECK(PathCatalog(load(kPath4)).classes().size() == 6);
}

TEST_CASE("catalog terminates on cyclic graphs via the hop cap") {
  Multigraph g = load(kTriangle);
  PathCatalog cat(g);
  CHECK(cat.max_hops() == 6);  // default: twice the edge count
  CHECK(!cat.entries().empty());
  PathCatalog capped(g, 2);
  CHECK(capped.max_hops() == 2);
  for (const auto& [word, entry] : capped.classes())
    CHECK(word.size() <= 2);
}

TEST_CASE("midpoint table for the three-edge path") {
  Multigraph g = load(kPath4);
  PathCatalog cat(g);
  std::map<std::set<std::string>, std::pair<Point, Rational>> expect = {
      {{"A", "B"}, {ep(g, "ab", rat(1, 2)), rat(3, 2)}},
      {{"B", "C"}, {ep(g, "bc", rat(1, 2)), rat(5, 2)}},
      {{"C", "D"}, {ep(g, "cd", rat(1, 2)), rat(7, 2)}},
      {{"A", "C"}, {vp(g, "B"), Rational(3)}},
      {{"B", "D"}, {vp(g, "C"), Rational(4)}},
      {{"A", "D"}, {ep(g, "bc", rat(1, 2)), rat(9, 2)}},
  };
  REQUIRE(cat.classes().size() == expect.size());
  for (const auto& [word, entry] : cat.classes()) {
    auto it = expect.find(ends(g, entry));
    REQUIRE(it != expect.end());
    Midpoint mp = path_midpoint(g, entry);
    CHECK(mp.point == it->second.first);
    CHECK(mp.time == it->second.second);
  }
}

TEST_CASE("midpoint of a path between equidistant endpoints") {
  Multigraph g = load(kStarUnequal);
  PathCatalog cat(g);
  for (const auto& [word, entry] : cat.classes()) {
    if (ends(g, entry) == std::set<std::string>{"A", "B"}) {
      Midpoint mp = path_midpoint(g, entry);
      CHECK(mp.point == vp(g, "c"));
      CHECK(mp.time == Rational(2));
    }
  }
}

TEST_CASE("the longest class owns the root") {
  Multigraph g = load(kPath4);
  Midpoint lm = longest_midpoint(g, PathCatalog(g));
  CHECK(lm.point == ep(g, "bc", rat(1, 2)));
  CHECK(lm.time == rat(9, 2));

  Multigraph e = load(kUnitEdge);
  Midpoint le = longest_midpoint(e, PathCatalog(e));
  CHECK(le.point == ep(e, "e", rat(1, 2)));
  CHECK(le.time == rat(3, 2));
}

TEST_CASE("maximal classes of a raw cycle disagree on their midpoint") {
  Multigraph g = load(kTriangle);
  PathCatalog cat(g);
  CHECK(code_of([&] { longest_midpoint(g, cat); }) ==
        Errc::ReachabilityFailure);
}

TEST_CASE("predicted synchronisation times") {
  CHECK(sync_time(load(kUnitEdge)) == 2);
  CHECK(sync_time(load(kPath3)) == 4);
  CHECK(sync_time(load(kPath21GenB)) == 5);
  CHECK(sync_time(load(kPath21GenA)) == 6);
  CHECK(sync_time(load(kStar3)) == 3);
  CHECK(sync_time(load(kStarUnequal)) == 5);
  // Continuum metric of the cyclic graph itself, not of its virtual tree.
  CHECK(sync_time(load(kTriangle)) == 3);
  CHECK(sync_time(load(kSquare)) == 4);
}

TEST_CASE("division positions follow the two-thirds cascade") {
  auto d2 = division_positions(Rational(1), 2);
  REQUIRE(d2.size() == 2);
  CHECK(d2[0] == rat(2, 3));
  CHECK(d2[1] == rat(4, 9));
  auto one = division_positions(Rational(3), 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == 2);
  CHECK(division_positions(Rational(1), 0).empty());
}

TEST_CASE("malformed walks are rejected") {
  Multigraph g = load(kPath3);
  PathEntry bad;
  bad.dirs = {toward(g, "ab", "B"), toward(g, "ab", "A")};  // reverses
  bad.from = g.vertex_index("A");
  bad.to = g.vertex_index("A");
  bad.weight = Rational(2);
  CHECK(code_of([&] { path_midpoint(g, bad); }) ==
        Errc::NotDirectionPreserving);

  PathEntry gap;
  gap.dirs = {toward(g, "ab", "B"), toward(g, "bc", "B")};  // not a walk
  gap.from = g.vertex_index("A");
  gap.to = g.vertex_index("B");
  gap.weight = Rational(2);
  CHECK(code_of([&] { path_midpoint(g, gap); }) ==
        Errc::NotDirectionPreserving);
}

TEST_CASE("thaw graph of the two-edge path") {
  Multigraph g = load(kPath3);
  ThawGraph tg = thaw_graph(g, PathCatalog(g));
  CHECK(tg.nodes.size() == 3);
  REQUIRE(tg.roots.size() == 1);
  CHECK(ends(g, tg.nodes.at(tg.roots[0]).entry) ==
        std::set<std::string>{"A", "C"});
  REQUIRE(tg.edges.size() == 2);
  for (const ThawEdge& e : tg.edges) {
    CHECK(e.from == tg.roots[0]);
    CHECK(e.weight == rat(1, 2));
  }
}

TEST_CASE("thaw graph of the three-edge path") {
  Multigraph g = load(kPath4);
  ThawGraph tg = thaw_graph(g, PathCatalog(g));
  CHECK(tg.nodes.size() == 6);
  REQUIRE(tg.roots.size() == 1);
  CHECK(ends(g, tg.nodes.at(tg.roots[0]).entry) ==
        std::set<std::string>{"A", "D"});

  // Eight cascade edges; identify them by endpoint-name pairs.
  auto key = [&](const Word& w) {
    std::set<std::string> s = ends(g, tg.nodes.at(w).entry);
    std::string out;
    for (const auto& name : s) out += name;
    return out;
  };
  std::multiset<std::pair<std::string, std::string>> got, want = {
      {"AD", "AC"}, {"AD", "BD"}, {"AD", "AB"}, {"AD", "CD"},
      {"AC", "AB"}, {"AC", "BC"}, {"BD", "BC"}, {"BD", "CD"},
  };
  for (const ThawEdge& e : tg.edges) {
    got.insert({key(e.from), key(e.to)});
    Rational span = tg.nodes.at(e.from).entry.weight -
                    tg.nodes.at(e.to).entry.weight;
    CHECK(e.weight == span / 2);
  }
  CHECK(got == want);
}

TEST_CASE("cut points of small cycles") {
  SUBCASE("triangle: one interior cut opposite the general") {
    Multigraph g = load(kTriangle);
    auto cuts = cut_points(g);
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0].point == ep(g, "bc", rat(1, 2)));
    CHECK(cuts[0].time == rat(3, 2));
    REQUIRE(cuts[0].cut.size() == 2);
    std::set<Direction> dirs(cuts[0].cut.begin(), cuts[0].cut.end());
    CHECK(dirs.count(toward(g, "bc", "B")) == 1);
    CHECK(dirs.count(toward(g, "bc", "C")) == 1);
  }
  SUBCASE("square: the antipodal vertex is fully sealed") {
    Multigraph g = load(kSquare);
    auto cuts = cut_points(g);
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0].point == vp(g, "C"));
    CHECK(cuts[0].time == Rational(2));
    CHECK(cuts[0].cut.size() == 2);
  }
  SUBCASE("pentagon: interior cut at five halves") {
    Multigraph g = load(kPentagon);
    auto cuts = cut_points(g);
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0].point == ep(g, "cd", rat(1, 2)));
    CHECK(cuts[0].time == rat(5, 2));
  }
  SUBCASE("parallel pair: both fronts meet at the far vertex") {
    Multigraph g = load(kParallel);
    auto cuts = cut_points(g);
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0].point == vp(g, "B"));
    CHECK(cuts[0].time == Rational(1));
    CHECK(cuts[0].cut.size() == 2);
  }
  SUBCASE("trees have none") {
    CHECK(cut_points(load(kPath4)).empty());
    CHECK(cut_points(load(kStarUnequal)).empty());
  }
}

TEST_CASE("virtual trees and their synchronisation times") {
  SUBCASE("a tree is returned unchanged") {
    Multigraph g = load(kPath3);
    Multigraph vt = virtual_tree(g);
    CHECK(vt.vertex_count() == 3);
    CHECK(vt.edge_count() == 2);
    CHECK(virtual_sync_time(g) == sync_time(g));
  }
  SUBCASE("triangle becomes a four-edge path through two half edges") {
    Multigraph g = load(kTriangle);
    Multigraph vt = virtual_tree(g);
    CHECK(vt.vertex_count() == 5);
    CHECK(vt.edge_count() == 4);
    CHECK(virtual_sync_time(g) == rat(9, 2));
  }
  SUBCASE("square: the far corner detaches onto two fresh leaves") {
    Multigraph g = load(kSquare);
    Multigraph vt = virtual_tree(g);
    CHECK(vt.vertex_count() == 5);
    CHECK(vt.edge_count() == 4);
    CHECK(virtual_sync_time(g) == 6);
  }
  SUBCASE("pentagon") {
    CHECK(virtual_sync_time(load(kPentagon)) == rat(15, 2));
  }
  SUBCASE("parallel pair collapses to a two-arm star") {
    Multigraph g = load(kParallel);
    Multigraph vt = virtual_tree(g);
    CHECK(vt.edge_count() == 2);
    CHECK(virtual_sync_time(g) == 3);
  }
}
