#include "mobsync/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mobsync {

void Multigraph::add_vertex(const std::string& name) {
  for (const auto& existing : vertex_names_)
    if (existing == name)
      throw Error(Errc::ParseError, "duplicate vertex '" + name + "'");
  vertex_names_.push_back(name);
  validated_ = false;
}

void Multigraph::add_edge(const std::string& name, const std::string& va,
                          const std::string& vb, const Rational& weight) {
  for (const auto& existing : edges_)
    if (existing.name == name)
      throw Error(Errc::ParseError, "duplicate edge '" + name + "'");
  edges_.push_back({name, vertex_index(va), vertex_index(vb), weight});
  validated_ = false;
}

void Multigraph::set_general(const std::string& name) {
  general_ = vertex_index(name);
}

VertexId Multigraph::vertex_index(const std::string& name) const {
  for (size_t i = 0; i < vertex_names_.size(); ++i)
    if (vertex_names_[i] == name) return static_cast<VertexId>(i);
  throw Error(Errc::ParseError, "unknown vertex '" + name + "'");
}

EdgeId Multigraph::edge_index(const std::string& name) const {
  for (size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].name == name) return static_cast<EdgeId>(i);
  throw Error(Errc::ParseError, "unknown edge '" + name + "'");
}

void Multigraph::validate() {
  if (edges_.empty())
    throw Error(Errc::Trivial, "graph has no edges");
  for (const auto& e : edges_) {
    if (e.a == e.b)
      throw Error(Errc::SelfLoop, "edge '" + e.name + "' is a self-loop");
    if (e.weight <= 0)
      throw Error(Errc::NonPositiveWeight,
                  "edge '" + e.name + "' has non-positive weight");
  }
  if (general_ < 0)
    throw Error(Errc::ParseError, "no general declared");

  incidence_.assign(vertex_names_.size(), {});
  for (size_t i = 0; i < edges_.size(); ++i) {
    incidence_[edges_[i].a].push_back(static_cast<EdgeId>(i));
    incidence_[edges_[i].b].push_back(static_cast<EdgeId>(i));
  }
  for (auto& inc : incidence_) std::sort(inc.begin(), inc.end());

  std::vector<char> seen(vertex_names_.size(), 0);
  std::vector<VertexId> stack = {0};
  seen[0] = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : incidence_[v]) {
      VertexId other = edges_[e].a == v ? edges_[e].b : edges_[e].a;
      if (!seen[other]) {
        seen[other] = 1;
        stack.push_back(other);
      }
    }
  }
  for (char s : seen)
    if (!s) throw Error(Errc::Disconnected, "graph is not connected");
  validated_ = true;
}

std::vector<Direction> Multigraph::outgoing_directions(VertexId v) const {
  std::vector<Direction> out;
  for (EdgeId e : incidence_[v])
    out.push_back({e, edges_[e].a == v ? 1 : 0});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> Multigraph::vertex_distances(VertexId source) const {
  size_t n = vertex_names_.size();
  std::vector<Rational> dist(n, 0);
  std::vector<char> reached(n, 0), done(n, 0);
  reached[source] = 1;
  for (size_t round = 0; round < n; ++round) {
    int best = -1;
    for (size_t v = 0; v < n; ++v)
      if (reached[v] && !done[v] && (best < 0 || dist[v] < dist[best]))
        best = static_cast<int>(v);
    if (best < 0) break;
    done[best] = 1;
    for (EdgeId e : incidence_[best]) {
      VertexId other = edges_[e].a == best ? edges_[e].b : edges_[e].a;
      Rational candidate = dist[best] + edges_[e].weight;
      if (!reached[other] || candidate < dist[other]) {
        reached[other] = 1;
        dist[other] = candidate;
      }
    }
  }
  return dist;
}

namespace {

// Farthest continuum point of edge pair (e, f) for precomputed vertex
// distances. Points interior to e are parameterised by x in [0, w(e)]
// measured from endpoint a; the distance to a point y of f is the smaller of
// the four corner routes, and the maximum over (x, y) is attained at a
// breakpoint of the lower envelope.
Rational edge_pair_max(const Multigraph& g,
                       const std::vector<std::vector<Rational>>& dist,
                       EdgeId ei, EdgeId fi) {
  const Edge& e = g.edge(ei);
  const Edge& f = g.edge(fi);
  if (ei == fi) return (dist[e.a][e.b] + e.weight) / 2;

  auto clip = [&](Rational x) {
    if (x < 0) return Rational(0);
    if (x > e.weight) return e.weight;
    return x;
  };
  std::vector<Rational> candidates = {
      Rational(0), e.weight,
      clip((e.weight + dist[e.b][f.a] - dist[e.a][f.a]) / 2),
      clip((e.weight + dist[e.b][f.b] - dist[e.a][f.b]) / 2)};
  Rational best(0);
  for (const Rational& x : candidates) {
    Rational via_a = std::min(Rational(x + dist[e.a][f.a]),
                              Rational(e.weight - x + dist[e.b][f.a]));
    Rational via_b = std::min(Rational(x + dist[e.a][f.b]),
                              Rational(e.weight - x + dist[e.b][f.b]));
    best = std::max(best, Rational((via_a + via_b + f.weight) / 2));
  }
  return best;
}

}  // namespace

MetricSummary metric_summary(const Multigraph& g) {
  std::vector<std::vector<Rational>> dist(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    dist[v] = g.vertex_distances(v);

  MetricSummary summary{Rational(0), Rational(0)};
  const auto& dg = dist[g.general()];
  for (const Edge& e : g.edges())
    summary.radius =
        std::max(summary.radius, Rational((dg[e.a] + dg[e.b] + e.weight) / 2));
  for (EdgeId ei = 0; ei < g.edge_count(); ++ei)
    for (EdgeId fi = ei; fi < g.edge_count(); ++fi)
      summary.diameter =
          std::max(summary.diameter, edge_pair_max(g, dist, ei, fi));
  return summary;
}

Multigraph parse_multigraph(const std::string& text) {
  Multigraph g;
  bool have_general = false;
  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword)) continue;
    auto fail = [&](const std::string& what) -> Error {
      return Error(Errc::ParseError,
                   "line " + std::to_string(lineno) + ": " + what);
    };
    if (keyword == "vertex") {
      std::string name, extra;
      if (!(fields >> name) || (fields >> extra))
        throw fail("expected 'vertex <name>'");
      g.add_vertex(name);
    } else if (keyword == "edge") {
      std::string name, va, vb, weight, extra;
      if (!(fields >> name >> va >> vb >> weight) || (fields >> extra))
        throw fail("expected 'edge <name> <vertex> <vertex> <weight>'");
      auto w = parse_rational(weight);
      if (!w) throw fail("bad weight '" + weight + "'");
      g.add_edge(name, va, vb, *w);
    } else if (keyword == "general") {
      std::string name, extra;
      if (!(fields >> name) || (fields >> extra))
        throw fail("expected 'general <name>'");
      if (have_general) throw fail("general declared twice");
      g.set_general(name);
      have_general = true;
    } else {
      throw fail("unknown keyword '" + keyword + "'");
    }
  }
  g.validate();
  return g;
}

std::string serialize_multigraph(const Multigraph& g) {
  std::vector<std::string> vertices;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    vertices.push_back(g.vertex_name(v));
  std::sort(vertices.begin(), vertices.end());

  std::vector<const Edge*> edges;
  for (const Edge& e : g.edges()) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(),
            [](const Edge* a, const Edge* b) { return a->name < b->name; });

  std::ostringstream out;
  for (const auto& v : vertices) out << "vertex " << v << "\n";
  for (const Edge* e : edges) {
    // Endpoint order is preserved: interior offsets are measured from the
    // first endpoint, so swapping ends would mirror every interior point.
    out << "edge " << e->name << " " << g.vertex_name(e->a) << " "
        << g.vertex_name(e->b) << " " << to_string(e->weight) << "\n";
  }
  out << "general " << g.vertex_name(g.general()) << "\n";
  return out.str();
}

std::string graph_digest(const Multigraph& g) {
  std::string text = serialize_multigraph(g);
  uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

}  // namespace mobsync
