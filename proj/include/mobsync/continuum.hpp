#pragma once

#include <string>
#include <utility>

#include "mobsync/graph.hpp"

namespace mobsync {

// A point of the continuum: a vertex, or an interior point of an edge at
// offset 0 < offset < weight measured from endpoint a.
struct Point {
  VertexId vertex = -1;
  EdgeId edge = -1;
  Rational offset;

  bool is_vertex() const { return vertex >= 0; }

  static Point at_vertex(VertexId v) {
    Point p;
    p.vertex = v;
    return p;
  }
  // Normalises offsets 0 and weight to the corresponding vertex.
  static Point make(const Multigraph& g, EdgeId e, const Rational& offset);

  bool operator==(const Point& o) const {
    return vertex == o.vertex && edge == o.edge &&
           (vertex >= 0 || offset == o.offset);
  }
  bool operator<(const Point& o) const {
    if (is_vertex() != o.is_vertex()) return is_vertex();
    if (is_vertex()) return vertex < o.vertex;
    if (edge != o.edge) return edge < o.edge;
    return offset < o.offset;
  }
};

std::string point_to_string(const Multigraph& g, const Point& p);

// Distance from p to the vertex ahead when moving in direction d, with that
// vertex. p must lie on d's edge (or be one of its endpoints).
std::pair<Rational, VertexId> reach(const Multigraph& g, const Point& p,
                                    Direction d);

// Moves p by `distance` >= 0 along d without crossing a vertex; landing
// exactly on one is allowed. Throws OvershootsEvent if the distance exceeds
// the reach, BadPoint if d does not apply at p.
Point advance(const Multigraph& g, const Point& p, Direction d,
              const Rational& distance);

Rational point_distance(const Multigraph& g, const Point& p, const Point& q);

}  // namespace mobsync
