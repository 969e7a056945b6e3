#include "mobsync/engine.hpp"

#include <algorithm>

namespace mobsync {

Rational signal_speed(const MachineDef& m, const Signal& s) {
  auto it = m.speeds.find(s.kind);
  if (it == m.speeds.end())
    throw Error(Errc::HandlerDomainViolation, "unknown kind '" + s.kind + "'");
  return it->second;
}

namespace {

void validate_signal(const Multigraph& g, const MachineDef& m, const Point& p,
                     const Signal& s) {
  Rational speed = signal_speed(m, s);
  if (speed != 0 && !s.dir)
    throw Error(Errc::HandlerDomainViolation,
                "moving signal '" + s.kind + "' has no direction");
  auto check_local = [&](Direction d) {
    if (p.is_vertex()) {
      const Edge& e = g.edge(d.edge);
      if (g.tail(d) != p.vertex)
        throw Error(Errc::HandlerDomainViolation,
                    "signal '" + s.kind + "' direction does not leave vertex " +
                        g.vertex_name(p.vertex) + " (edge '" + e.name + "')");
    } else if (d.edge != p.edge) {
      throw Error(Errc::HandlerDomainViolation,
                  "signal '" + s.kind + "' direction is on another edge");
    }
  };
  if (s.dir) check_local(*s.dir);
  for (Direction d : s.dirs) check_local(d);
  // Midpoint words are rooted at the signal's own location.
  if (s.kind == "M") {
    if (!s.w1.empty()) check_local(s.w1.front());
    if (!s.w2.empty()) check_local(s.w2.front());
  }
}

// Signed velocity of a signal along its edge (positive toward endpoint b).
Rational signed_velocity(const MachineDef& m, const Signal& s) {
  Rational speed = signal_speed(m, s);
  if (speed == 0 || !s.dir) return Rational(0);
  return s.dir->to_b ? speed : -speed;
}

struct Located {
  Rational offset;
  Rational velocity;
};

// Signals travelling on or into the given edge, as (offset, velocity) pairs.
std::vector<Located> edge_occupants(const Multigraph& g, const MachineDef& m,
                                    const Configuration& c, EdgeId e) {
  std::vector<Located> out;
  const Edge& edge = g.edge(e);
  for (const auto& [p, set] : c) {
    if (p.is_vertex()) {
      for (const Signal& s : set) {
        if (signal_speed(m, s) == 0 || !s.dir || s.dir->edge != e) continue;
        if (g.tail(*s.dir) != p.vertex) continue;
        Rational offset = p.vertex == edge.a ? Rational(0) : edge.weight;
        out.push_back({offset, signed_velocity(m, s)});
      }
    } else if (p.edge == e) {
      for (const Signal& s : set)
        out.push_back({p.offset, signed_velocity(m, s)});
    }
  }
  return out;
}

struct Candidates {
  std::optional<Rational> time;
  std::set<Point> points;

  void offer(const Rational& t, const Point& p) {
    if (!time || t < *time) {
      time = t;
      points = {p};
    } else if (t == *time) {
      points.insert(p);
    }
  }
  void merge(const Candidates& o) {
    if (!o.time) return;
    if (!time || *o.time < *time) {
      time = o.time;
      points = o.points;
    } else if (*o.time == *time) {
      points.insert(o.points.begin(), o.points.end());
    }
  }
};

// Earliest pairwise meeting strictly after `now`, strictly interior to the
// edge. Meetings on a vertex are covered by arrival candidates instead.
Candidates edge_candidates(const Multigraph& g, const MachineDef& m,
                           const Configuration& c, EdgeId e,
                           const Rational& now) {
  Candidates best;
  std::vector<Located> occ = edge_occupants(g, m, c, e);
  const Rational& weight = g.edge(e).weight;
  for (size_t i = 0; i < occ.size(); ++i) {
    if (occ[i].velocity == 0) continue;  // stationary pairs never meet
    for (size_t j = 0; j < occ.size(); ++j) {
      if (i == j || occ[i].velocity == occ[j].velocity) continue;
      Rational tau =
          (occ[j].offset - occ[i].offset) / (occ[i].velocity - occ[j].velocity);
      if (tau <= 0) continue;
      Rational x = occ[i].offset + occ[i].velocity * tau;
      if (x <= 0 || x >= weight) continue;
      best.offer(now + tau, Point::make(g, e, x));
    }
  }
  return best;
}

Candidates arrival_candidates(const Multigraph& g, const MachineDef& m,
                              const Configuration& c, const Rational& now) {
  Candidates best;
  for (const auto& [p, set] : c) {
    for (const Signal& s : set) {
      Rational speed = signal_speed(m, s);
      if (speed == 0) continue;
      auto [room, target] = reach(g, p, *s.dir);
      best.offer(now + room / speed, Point::at_vertex(target));
    }
  }
  return best;
}

}  // namespace

Configuration drift(const Multigraph& g, const MachineDef& m,
                    const Configuration& c, const Rational& dt) {
  if (dt == 0) return c;
  Configuration out;
  for (const auto& [p, set] : c) {
    for (const Signal& s : set) {
      Rational speed = signal_speed(m, s);
      Point q = speed == 0 ? p : advance(g, p, *s.dir, speed * dt);
      out[q].insert(s);
    }
  }
  return out;
}

std::optional<Rational> next_event_time(const Multigraph& g,
                                        const MachineDef& m,
                                        const Configuration& c,
                                        const Rational& now) {
  Candidates best = arrival_candidates(g, m, c, now);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    best.merge(edge_candidates(g, m, c, e, now));
  return best.time;
}

RunResult run(const Multigraph& g, const MachineDef& m, Configuration config,
              const Rational& start, const RunLimits& limits) {
  RunResult result;
  Rational now = start;
  long events = 0;

  std::vector<Candidates> per_edge(g.edge_count());
  std::vector<char> dirty(g.edge_count(), 1);

  for (;;) {
    Candidates best = arrival_candidates(g, m, config, now);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (dirty[e]) {
        per_edge[e] = edge_candidates(g, m, config, e, now);
        dirty[e] = 0;
      }
      best.merge(per_edge[e]);
    }

    if (!best.time) {
      result.status = RunStatus::Quiescent;
      break;
    }
    if (*best.time <= now) {
      result.status = RunStatus::SingularityMinusOne;
      break;
    }
    if (limits.horizon && *best.time > *limits.horizon) {
      config = drift(g, m, config, *limits.horizon - now);
      now = *limits.horizon;
      result.status = RunStatus::HorizonReached;
      break;
    }
    if (events + static_cast<long>(best.points.size()) > limits.max_events) {
      result.status = RunStatus::EventBudgetExhausted;
      break;
    }

    config = drift(g, m, config, *best.time - now);
    now = *best.time;

    EventBatch batch{now, {}};
    for (const Point& p : best.points) {
      ++events;
      SignalSet before = config.count(p) ? config.at(p) : SignalSet{};
      SignalSet after = p.is_vertex()
                            ? m.delta_vertex(g.outgoing_directions(p.vertex),
                                             before)
                            : m.delta_edge(before);
      for (const Signal& s : after) validate_signal(g, m, p, s);

      if (after.empty())
        config.erase(p);
      else
        config[p] = after;

      EventEntry entry{p, {}, {}};
      std::set_difference(before.begin(), before.end(), after.begin(),
                          after.end(),
                          std::inserter(entry.consumed, entry.consumed.end()));
      std::set_difference(after.begin(), after.end(), before.begin(),
                          before.end(),
                          std::inserter(entry.produced, entry.produced.end()));
      if (!entry.consumed.empty() || !entry.produced.empty())
        batch.entries.push_back(std::move(entry));

      if (p.is_vertex()) {
        for (EdgeId e : g.incident_edges(p.vertex)) dirty[e] = 1;
      } else {
        dirty[p.edge] = 1;
      }
    }
    if (!batch.entries.empty()) result.batches.push_back(std::move(batch));
  }

  result.final_time = now;
  result.final_configuration = std::move(config);
  return result;
}

}  // namespace mobsync
