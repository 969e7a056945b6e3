#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mobsync/continuum.hpp"
#include "mobsync/engine.hpp"
#include "mobsync/error.hpp"
#include "mobsync/fssp.hpp"
#include "mobsync/graph.hpp"

namespace testutil {

// Runs f, returning the error code it throws (nullopt if it returns).
template <typename F>
std::optional<mobsync::Errc> code_of(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const mobsync::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Canned graphs.  Edges are declared with the first endpoint nearer the
// general so interior offsets in expectations read from the general side.
inline const char* kUnitEdge = "vertex A\nvertex B\nedge e A B 1\ngeneral A\n";
inline const char* kPath3 =
    "vertex A\nvertex B\nvertex C\n"
    "edge ab A B 1\nedge bc B C 1\ngeneral A\n";
inline const char* kPath4 =
    "vertex A\nvertex B\nvertex C\nvertex D\n"
    "edge ab A B 1\nedge bc B C 1\nedge cd C D 1\ngeneral A\n";
inline const char* kPath21GenA =
    "vertex A\nvertex B\nvertex C\n"
    "edge ab A B 2\nedge bc B C 1\ngeneral A\n";
inline const char* kPath21GenB =
    "vertex A\nvertex B\nvertex C\n"
    "edge ab A B 2\nedge bc B C 1\ngeneral B\n";
inline const char* kStar3 =
    "vertex c\nvertex A\nvertex B\nvertex C\n"
    "edge cA c A 1\nedge cB c B 1\nedge cC c C 1\ngeneral c\n";
inline const char* kStarUnequal =
    "vertex c\nvertex A\nvertex B\nvertex Z\n"
    "edge cA c A 1\nedge cB c B 1\nedge cZ c Z 2\ngeneral c\n";
inline const char* kTriangle =
    "vertex A\nvertex B\nvertex C\n"
    "edge ab A B 1\nedge bc B C 1\nedge ca C A 1\ngeneral A\n";
inline const char* kSquare =
    "vertex A\nvertex B\nvertex C\nvertex D\n"
    "edge ab A B 1\nedge bc B C 1\nedge cd C D 1\nedge da D A 1\n"
    "general A\n";
inline const char* kParallel =
    "vertex A\nvertex B\nedge p A B 1\nedge q A B 1\ngeneral A\n";
inline const char* kPentagon =
    "vertex A\nvertex B\nvertex C\nvertex D\nvertex E\n"
    "edge ab A B 1\nedge bc B C 1\nedge cd C D 1\nedge de D E 1\n"
    "edge ea E A 1\ngeneral A\n";

inline mobsync::Multigraph load(const char* text) {
  return mobsync::parse_multigraph(text);
}

inline mobsync::Point vp(const mobsync::Multigraph& g, const std::string& v) {
  return mobsync::Point::at_vertex(g.vertex_index(v));
}

inline mobsync::Point ep(const mobsync::Multigraph& g, const std::string& e,
                         const mobsync::Rational& offset) {
  return mobsync::Point::make(g, g.edge_index(e), offset);
}

// Direction along edge `e` whose head is vertex `head`.
inline mobsync::Direction toward(const mobsync::Multigraph& g,
                                 const std::string& e,
                                 const std::string& head) {
  mobsync::EdgeId id = g.edge_index(e);
  return mobsync::Direction{
      id, g.vertex_name(g.edge(id).b) == head ? 1 : 0};
}

inline mobsync::RunResult run_machine(
    const mobsync::Multigraph& g, int depth,
    std::optional<mobsync::Rational> horizon = std::nullopt,
    long max_events = 200000) {
  mobsync::Machine machine(depth);
  mobsync::RunLimits limits;
  limits.horizon = std::move(horizon);
  limits.max_events = max_events;
  return mobsync::run(g, machine.def(),
                      mobsync::Machine::initial_configuration(g, depth),
                      mobsync::Rational(0), limits);
}

inline const mobsync::EventBatch* batch_at(const mobsync::RunResult& r,
                                           const mobsync::Rational& t) {
  for (const auto& b : r.batches)
    if (b.time == t) return &b;
  return nullptr;
}

inline std::vector<mobsync::Rational> batch_times(const mobsync::RunResult& r) {
  std::vector<mobsync::Rational> out;
  for (const auto& b : r.batches) out.push_back(b.time);
  return out;
}

inline std::set<std::string> kinds_at(const mobsync::Configuration& c,
                                      const mobsync::Point& p) {
  std::set<std::string> out;
  auto it = c.find(p);
  if (it != c.end())
    for (const auto& s : it->second) out.insert(s.kind);
  return out;
}

inline int count_kind(const mobsync::SignalSet& s, const std::string& kind) {
  int n = 0;
  for (const auto& sig : s)
    if (sig.kind == kind) ++n;
  return n;
}

// Every (time, point) at which a signal of the given kind was produced.
inline std::vector<std::pair<mobsync::Rational, mobsync::Point>> productions(
    const mobsync::RunResult& r, const std::string& kind) {
  std::vector<std::pair<mobsync::Rational, mobsync::Point>> out;
  for (const auto& b : r.batches)
    for (const auto& entry : b.entries)
      for (const auto& s : entry.produced)
        if (s.kind == kind) {
          out.emplace_back(b.time, entry.point);
          break;
        }
  return out;
}

}  // namespace testutil
