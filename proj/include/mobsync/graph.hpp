#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "mobsync/error.hpp"
#include "mobsync/rational.hpp"

namespace mobsync {

using VertexId = int;
using EdgeId = int;

struct Edge {
  std::string name;
  VertexId a = -1;
  VertexId b = -1;
  Rational weight;
};

// A direction along an edge: toward endpoint b when to_b == 1, toward a
// when to_b == 0. Ordered lexicographically so rule tie-breaks and
// serialisations are deterministic.
struct Direction {
  EdgeId edge = -1;
  int to_b = 1;

  Direction reverse() const { return {edge, 1 - to_b}; }
  friend auto operator<=>(const Direction&, const Direction&) = default;
};

using Word = std::vector<Direction>;  // a sequence of directions, possibly empty

// Connected weighted multigraph with one marked vertex (the general).
// Parallel edges are allowed, self-loops and non-positive weights are not.
class Multigraph {
 public:
  void add_vertex(const std::string& name);
  void add_edge(const std::string& name, const std::string& va,
                const std::string& vb, const Rational& weight);
  void set_general(const std::string& name);

  // Checks self-loops, weights, connectivity, non-triviality and the
  // presence of the general; builds incidence. Throws Error.
  void validate();

  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  VertexId general() const { return general_; }
  VertexId vertex_index(const std::string& name) const;
  EdgeId edge_index(const std::string& name) const;

  const std::vector<EdgeId>& incident_edges(VertexId v) const {
    return incidence_[v];
  }
  // Directions pointing out of v, one per incident edge, sorted.
  std::vector<Direction> outgoing_directions(VertexId v) const;

  // Endpoint the direction points toward / away from.
  VertexId head(Direction d) const {
    return d.to_b ? edges_[d.edge].b : edges_[d.edge].a;
  }
  VertexId tail(Direction d) const {
    return d.to_b ? edges_[d.edge].a : edges_[d.edge].b;
  }

  // Single-source shortest path distances over vertices.
  std::vector<Rational> vertex_distances(VertexId source) const;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
  VertexId general_ = -1;
  bool validated_ = false;
};

struct MetricSummary {
  Rational radius;    // eccentricity of the general over all continuum points
  Rational diameter;  // largest distance between two continuum points
};

MetricSummary metric_summary(const Multigraph& g);

// Text format, one declaration per line, '#' starts a comment:
//   vertex <name>
//   edge <name> <vertex> <vertex> <weight>
//   general <name>
Multigraph parse_multigraph(const std::string& text);
std::string serialize_multigraph(const Multigraph& g);

// FNV-1a of the canonical serialisation, as 16 hex digits.
std::string graph_digest(const Multigraph& g);

}  // namespace mobsync
