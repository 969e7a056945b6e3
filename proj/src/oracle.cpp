#include "mobsync/oracle.hpp"

#include <algorithm>
#include <set>

namespace mobsync {

Word reverse_path(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->reverse());
  return out;
}

Word canonical_class(const Word& w) {
  Word r = reverse_path(w);
  return std::min(w, r);
}

namespace {

void check_walk(const Multigraph& g, const PathEntry& p) {
  if (p.dirs.empty())
    throw Error(Errc::NotDirectionPreserving, "empty path");
  VertexId at = p.from;
  Rational total = 0;
  for (std::size_t i = 0; i < p.dirs.size(); ++i) {
    const Direction& d = p.dirs[i];
    if (g.tail(d) != at)
      throw Error(Errc::NotDirectionPreserving,
                  "walk leaves a vertex it is not at");
    if (i > 0 && d == p.dirs[i - 1].reverse())
      throw Error(Errc::NotDirectionPreserving, "walk reverses direction");
    total += g.edge(d.edge).weight;
    at = g.head(d);
  }
  if (at != p.to || total != p.weight)
    throw Error(Errc::NotDirectionPreserving,
                "walk endpoints or weight do not match the entry");
}

}  // namespace

PathCatalog::PathCatalog(const Multigraph& g, std::size_t max_hops) {
  max_hops_ = max_hops ? max_hops : 2 * g.edge_count();
  // Depth-first extension of every direction-preserving prefix.
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
    struct Frame {
      Word dirs;
      VertexId at;
      Rational weight;
    };
    std::vector<Frame> stack;
    stack.push_back({{}, v, 0});
    while (!stack.empty()) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      if (!f.dirs.empty()) {
        PathEntry e{f.dirs, v, f.at, f.weight};
        entries_.push_back(e);
        Word key = canonical_class(f.dirs);
        if (!classes_.count(key)) classes_[key] = e;
      }
      if (f.dirs.size() >= max_hops_) continue;
      for (const Direction& d : g.outgoing_directions(f.at)) {
        if (!f.dirs.empty() && d == f.dirs.back().reverse()) continue;
        Frame next = f;
        next.dirs.push_back(d);
        next.weight += g.edge(d.edge).weight;
        next.at = g.head(d);
        stack.push_back(std::move(next));
      }
    }
  }
}

Midpoint path_midpoint(const Multigraph& g, const PathEntry& p) {
  check_walk(g, p);
  Rational half = p.weight / 2;
  Point where = Point::at_vertex(p.from);
  Rational walked = 0;
  for (const Direction& d : p.dirs) {
    Rational w = g.edge(d.edge).weight;
    if (walked + w >= half) {
      Rational into = half - walked;
      Rational offset = d.to_b ? into : w - into;
      where = Point::make(g, d.edge, offset);
      break;
    }
    walked += w;
  }
  const std::vector<Rational> dist = g.vertex_distances(g.general());
  Midpoint m;
  m.point = where;
  m.time = std::max(dist[p.from], dist[p.to]) + half;
  return m;
}

Midpoint longest_midpoint(const Multigraph& g, const PathCatalog& c) {
  Rational best = 0;
  for (const auto& [key, e] : c.classes()) best = std::max(best, e.weight);
  std::optional<Midpoint> shared;
  for (const auto& [key, e] : c.classes()) {
    if (e.weight != best) continue;
    Midpoint m = path_midpoint(g, e);
    if (!shared) {
      shared = m;
    } else if (!(shared->point == m.point) || shared->time != m.time) {
      throw Error(Errc::ReachabilityFailure,
                  "maximal paths do not share a midpoint");
    }
  }
  if (!shared)
    throw Error(Errc::ReachabilityFailure, "no paths in the catalog");
  return *shared;
}

Rational sync_time(const Multigraph& g) {
  MetricSummary m = metric_summary(g);
  return m.radius + m.diameter;
}

std::vector<Rational> division_positions(const Rational& length, int depth) {
  std::vector<Rational> out;
  Rational pos = length;
  for (int n = 1; n <= depth; ++n) {
    pos = pos * 2 / 3;
    out.push_back(pos);
  }
  return out;
}

namespace {

bool point_on_path(const Multigraph& g, const PathEntry& p, const Point& q) {
  if (q.is_vertex()) {
    VertexId at = p.from;
    if (at == q.vertex) return true;
    for (const Direction& d : p.dirs) {
      at = g.head(d);
      if (at == q.vertex) return true;
    }
    return false;
  }
  for (const Direction& d : p.dirs)
    if (d.edge == q.edge) return true;
  return false;
}

}  // namespace

ThawGraph thaw_graph(const Multigraph& g, const PathCatalog& c) {
  ThawGraph t;
  for (const auto& [key, e] : c.classes()) {
    ThawNode node;
    node.entry = e;
    Midpoint m = path_midpoint(g, e);
    node.midpoint = m.point;
    node.mid_time = m.time;
    t.nodes[key] = node;
  }
  Rational best = 0;
  for (const auto& [key, n] : t.nodes)
    best = std::max(best, n.entry.weight);
  for (const auto& [key, n] : t.nodes)
    if (n.entry.weight == best) t.roots.push_back(key);

  for (const auto& [pk, pn] : t.nodes) {
    for (const auto& [qk, qn] : t.nodes) {
      if (!(qn.entry.weight < pn.entry.weight)) continue;
      if (!point_on_path(g, pn.entry, qn.midpoint)) continue;
      Rational w = (pn.entry.weight - qn.entry.weight) / 2;
      Rational measured = point_distance(g, pn.midpoint, qn.midpoint);
      if (measured != w) continue;  // not a branch step of the cascade
      // Cross-check the two distance computations before trusting the edge.
      if (point_distance(g, qn.midpoint, pn.midpoint) != w)
        throw Error(Errc::WeightMismatch,
                    "asymmetric continuum distance between midpoints");
      t.edges.push_back({pk, qk, w});
    }
  }

  std::set<Word> reached(t.roots.begin(), t.roots.end());
  bool grew = true;
  while (grew) {
    grew = false;
    for (const ThawEdge& e : t.edges) {
      if (reached.count(e.from) && !reached.count(e.to)) {
        reached.insert(e.to);
        grew = true;
      }
    }
  }
  for (const auto& [key, n] : t.nodes) {
    if (!reached.count(key))
      throw Error(Errc::ReachabilityFailure,
                  "class not reachable from a maximal class in the thaw graph");
    (void)n;
  }
  for (const ThawEdge& e : t.edges) {
    for (const Word& r : t.roots)
      if (e.to == r)
        throw Error(Errc::WeightMismatch,
                    "maximal class has an incoming thaw edge");
  }
  return t;
}

std::vector<CutPoint> cut_points(const Multigraph& g) {
  std::vector<CutPoint> out;
  const std::vector<Rational> dist = g.vertex_distances(g.general());
  const Rational inf = -1;  // sentinel: entry never happens

  // Directions through which the front *arrives* at each vertex.
  std::vector<std::set<Direction>> arrive(g.vertex_count());
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
    if (v == g.general()) continue;
    for (const Direction& d : g.outgoing_directions(v)) {
      VertexId w = g.head(d);
      if (dist[w] + g.edge(d.edge).weight == dist[v]) arrive[v].insert(d);
    }
  }

  // Vertex cuts: several fronts arriving together seal all but the least
  // of the arrival directions.
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
    if (arrive[v].size() >= 2) {
      CutPoint cp;
      cp.point = Point::at_vertex(v);
      cp.time = dist[v];
      bool keep_one =
          arrive[v].size() < g.outgoing_directions(v).size();
      auto it = arrive[v].begin();
      if (keep_one) ++it;  // the least arrival direction stays connected
      for (; it != arrive[v].end(); ++it) cp.cut.push_back(*it);
      out.push_back(cp);
    }
  }

  // Interior cuts: fronts entering one edge from both ends.
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    const Edge& ed = g.edge(e);
    auto entry_time = [&](VertexId u) -> Rational {
      if (u == g.general()) return dist[u];
      for (const Direction& d : arrive[u])
        if (d.edge == e) return inf;  // front only leaves e here
      return arrive[u].empty() ? inf : dist[u];
    };
    Rational ta = entry_time(ed.a);
    Rational tb = entry_time(ed.b);
    if (ta == inf || tb == inf) continue;
    Rational x = (tb - ta + ed.weight) / 2;  // measured from ed.a
    if (x <= 0 || x >= ed.weight) continue;  // endpoint meets are vertex cuts
    CutPoint cp;
    cp.point = Point::make(g, e, x);
    cp.time = ta + x;
    cp.cut.push_back(Direction{e, 1});
    cp.cut.push_back(Direction{e, 0});
    std::sort(cp.cut.begin(), cp.cut.end());
    out.push_back(cp);
  }
  std::sort(out.begin(), out.end(), [](const CutPoint& a, const CutPoint& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.point < b.point;
  });
  return out;
}

Multigraph virtual_tree(const Multigraph& g) {
  std::vector<CutPoint> cuts = cut_points(g);
  if (cuts.empty()) return g;

  std::map<EdgeId, Rational> split;          // interior cut offsets from a
  std::set<Direction> sealed;                // vertex-cut directions
  for (const CutPoint& cp : cuts) {
    if (cp.point.is_vertex()) {
      for (const Direction& d : cp.cut) sealed.insert(d);
    } else {
      split[cp.point.edge] = cp.point.offset;
    }
  }

  // Assemble the edge list first: a fully sealed vertex keeps no edges and
  // must not appear in the tree at all (its point lives on as the fresh
  // leaves of the edges that used to meet there).
  struct Half {
    std::string name, a, b;
    Rational weight;
  };
  std::vector<Half> list;
  int fresh = 0;
  auto leaf_name = [&](const std::string& base) {
    return base + "~" + std::to_string(fresh++);
  };
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    const Edge& ed = g.edge(e);
    auto at = split.find(e);
    if (at != split.end()) {
      list.push_back({ed.name + "~a", g.vertex_name(ed.a),
                      leaf_name(ed.name), at->second});
      list.push_back({ed.name + "~b", leaf_name(ed.name),
                      g.vertex_name(ed.b), ed.weight - at->second});
      continue;
    }
    std::string a = g.vertex_name(ed.a);
    std::string b = g.vertex_name(ed.b);
    // A sealed direction points from the cut vertex into the edge: the
    // edge's end at that vertex is detached onto a fresh leaf.
    if (sealed.count(Direction{e, 1})) a = leaf_name(ed.name);
    if (sealed.count(Direction{e, 0})) b = leaf_name(ed.name);
    list.push_back({ed.name, a, b, ed.weight});
  }

  Multigraph t;
  std::set<std::string> names;
  for (const Half& h : list) {
    names.insert(h.a);
    names.insert(h.b);
  }
  for (const std::string& n : names) t.add_vertex(n);
  for (const Half& h : list) t.add_edge(h.name, h.a, h.b, h.weight);
  t.set_general(g.vertex_name(g.general()));
  t.validate();
  if (t.edge_count() + 1 != t.vertex_count())
    throw Error(Errc::ReachabilityFailure, "cutting did not produce a tree");
  return t;
}

Rational virtual_sync_time(const Multigraph& g) {
  return sync_time(virtual_tree(g));
}

}  // namespace mobsync
