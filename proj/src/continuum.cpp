#include "mobsync/continuum.hpp"

#include <algorithm>

namespace mobsync {

Point Point::make(const Multigraph& g, EdgeId e, const Rational& offset) {
  const Edge& edge = g.edge(e);
  if (offset < 0 || offset > edge.weight)
    throw Error(Errc::BadPoint, "offset outside edge '" + edge.name + "'");
  if (offset == 0) return at_vertex(edge.a);
  if (offset == edge.weight) return at_vertex(edge.b);
  Point p;
  p.edge = e;
  p.offset = offset;
  return p;
}

std::string point_to_string(const Multigraph& g, const Point& p) {
  if (p.is_vertex()) return g.vertex_name(p.vertex);
  return g.edge(p.edge).name + "@" + to_string(p.offset);
}

std::pair<Rational, VertexId> reach(const Multigraph& g, const Point& p,
                                    Direction d) {
  const Edge& e = g.edge(d.edge);
  VertexId target = d.to_b ? e.b : e.a;
  if (p.is_vertex()) {
    if (p.vertex != e.a && p.vertex != e.b)
      throw Error(Errc::BadPoint, "direction does not apply at this vertex");
    if (p.vertex == target)
      throw Error(Errc::BadPoint, "direction points at its own origin");
    return {e.weight, target};
  }
  if (p.edge != d.edge)
    throw Error(Errc::BadPoint, "direction is on another edge");
  return {d.to_b ? e.weight - p.offset : p.offset, target};
}

Point advance(const Multigraph& g, const Point& p, Direction d,
              const Rational& distance) {
  if (distance < 0) throw Error(Errc::BadPoint, "negative travel distance");
  if (distance == 0) return p;
  auto [room, target] = reach(g, p, d);
  if (distance > room)
    throw Error(Errc::OvershootsEvent, "travel crosses a vertex");
  if (distance == room) return Point::at_vertex(target);
  const Edge& e = g.edge(d.edge);
  Rational start = p.is_vertex() ? (p.vertex == e.a ? Rational(0) : e.weight)
                                 : p.offset;
  return Point::make(g, d.edge,
                     d.to_b ? Rational(start + distance)
                            : Rational(start - distance));
}

Rational point_distance(const Multigraph& g, const Point& p, const Point& q) {
  if (p.is_vertex() && q.is_vertex())
    return g.vertex_distances(p.vertex)[q.vertex];
  if (p.is_vertex()) {
    const Edge& f = g.edge(q.edge);
    auto d = g.vertex_distances(p.vertex);
    return std::min(Rational(d[f.a] + q.offset),
                    Rational(d[f.b] + f.weight - q.offset));
  }
  if (q.is_vertex()) return point_distance(g, q, p);

  const Edge& e = g.edge(p.edge);
  const Edge& f = g.edge(q.edge);
  auto da = g.vertex_distances(e.a);
  auto db = g.vertex_distances(e.b);
  if (p.edge == q.edge) {
    Rational direct = abs(p.offset - q.offset);
    Rational wrap_a = p.offset + da[e.b] + e.weight - q.offset;
    Rational wrap_b = e.weight - p.offset + db[e.a] + q.offset;
    return std::min({direct, wrap_a, wrap_b});
  }
  return std::min({Rational(p.offset + da[f.a] + q.offset),
                   Rational(p.offset + da[f.b] + f.weight - q.offset),
                   Rational(e.weight - p.offset + db[f.a] + q.offset),
                   Rational(e.weight - p.offset + db[f.b] + f.weight -
                            q.offset)});
}

}  // namespace mobsync
