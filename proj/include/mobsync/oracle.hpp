#pragma once

#include "mobsync/continuum.hpp"

#include <map>
#include <vector>

namespace mobsync {

// A direction-preserving path: a vertex-to-vertex walk that never
// immediately reverses. Identified with its reverse; `canonical_class`
// picks the smaller of the two words as the class representative.
struct PathEntry {
  Word dirs;
  VertexId from = -1;
  VertexId to = -1;
  Rational weight;
};

Word reverse_path(const Word& w);
Word canonical_class(const Word& w);

class PathCatalog {
 public:
  // Enumerates every direction-preserving path of at most `max_hops` edges
  // (0 picks the default of twice the edge count).
  PathCatalog(const Multigraph& g, std::size_t max_hops = 0);

  const std::vector<PathEntry>& entries() const { return entries_; }
  const std::map<Word, PathEntry>& classes() const { return classes_; }
  std::size_t max_hops() const { return max_hops_; }

 private:
  std::vector<PathEntry> entries_;
  std::map<Word, PathEntry> classes_;
  std::size_t max_hops_ = 0;
};

struct Midpoint {
  Point point;
  Rational time;  // when the machine drops the marker (or thaw root) there
};

// Midpoint of the path and the time the machine marks it:
// max(dist(general, from), dist(general, to)) + weight/2.
// Throws NotDirectionPreserving if the word is not a valid walk.
Midpoint path_midpoint(const Multigraph& g, const PathEntry& p);

// The midpoint shared by every maximal-weight class; throws
// ReachabilityFailure if the maximal classes disagree on it.
Midpoint longest_midpoint(const Multigraph& g, const PathCatalog& c);

// Predicted synchronisation time: the general's continuum eccentricity
// plus the continuum diameter.
Rational sync_time(const Multigraph& g);

// Boundary positions of the division of a length: length * (2/3)^n,
// measured from the origin end, for n = 1..depth.
std::vector<Rational> division_positions(const Rational& length, int depth);

struct ThawNode {
  PathEntry entry;
  Point midpoint;
  Rational mid_time;
};

struct ThawEdge {
  Word from, to;     // canonical class words
  Rational weight;   // (w(from) - w(to)) / 2
};

// The branch structure of the thaw cascade: an edge p -> q whenever q is
// strictly lighter, q's midpoint lies on p, and the midpoints are exactly
// (w(p) - w(q))/2 apart. Construction verifies that every class is
// reachable from the maximal ones (ReachabilityFailure otherwise) and that
// the independent continuum distance agrees with each edge weight
// (WeightMismatch otherwise).
struct ThawGraph {
  std::map<Word, ThawNode> nodes;
  std::vector<ThawEdge> edges;
  std::vector<Word> roots;  // maximal classes
};

ThawGraph thaw_graph(const Multigraph& g, const PathCatalog& c);

// Where initiate fronts meet on a graph with cycles: the points that act
// as leaves from then on. `cut` lists the directions that are severed
// (each points from the cut location into the side it seals off).
struct CutPoint {
  Point point;
  Rational time;
  std::vector<Direction> cut;
};

std::vector<CutPoint> cut_points(const Multigraph& g);

// The tree the run effectively happens on: every interior cut splits its
// edge into two leaf-ended halves, every vertex cut detaches the sealed
// edge ends onto fresh leaves. Returns g unchanged when there is nothing
// to cut; validates the result is a tree.
Multigraph virtual_tree(const Multigraph& g);

// sync_time of the virtual tree (equals sync_time(g) on trees).
Rational virtual_sync_time(const Multigraph& g);

}  // namespace mobsync
