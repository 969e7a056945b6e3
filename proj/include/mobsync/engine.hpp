#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "mobsync/continuum.hpp"

namespace mobsync {

// One signal instance. The datum slots cover every kind used by the
// synchronisation machine; unused slots stay empty and compare equal.
struct Signal {
  std::string kind;
  std::optional<Direction> dir;  // travel direction, or stored heading
  std::set<Direction> dirs;      // direction-set datum
  Word w1, w2;                   // word data
  bool flag = false;             // mark / thawing datum

  friend auto operator<=>(const Signal&, const Signal&) = default;
};

using SignalSet = std::set<Signal>;
using Configuration = std::map<Point, SignalSet>;

// A machine: kind speeds plus the two collision handlers. Handlers receive
// the complete signal set at the event point and return its replacement;
// signals without an applicable rule must be returned unchanged.
struct MachineDef {
  std::map<std::string, Rational> speeds;
  std::function<SignalSet(const SignalSet&)> delta_edge;
  std::function<SignalSet(const std::vector<Direction>&, const SignalSet&)>
      delta_vertex;
};

struct EventEntry {
  Point point;
  SignalSet consumed, produced;
};

struct EventBatch {
  Rational time;
  std::vector<EventEntry> entries;
};

enum class RunStatus {
  Quiescent,
  HorizonReached,
  EventBudgetExhausted,
  SingularityMinusOne,
};

struct RunLimits {
  std::optional<Rational> horizon;
  long max_events = 200000;
};

struct RunResult {
  RunStatus status = RunStatus::Quiescent;
  Rational final_time;
  Configuration final_configuration;
  std::vector<EventBatch> batches;
};

Rational signal_speed(const MachineDef& m, const Signal& s);

// Moves every signal by speed * dt along its direction. Throws
// OvershootsEvent if any mover would cross a vertex.
Configuration drift(const Multigraph& g, const MachineDef& m,
                    const Configuration& c, const Rational& dt);

// Time of the next collision or vertex arrival strictly after `now`,
// or nullopt when nothing will ever happen again.
std::optional<Rational> next_event_time(const Multigraph& g,
                                        const MachineDef& m,
                                        const Configuration& c,
                                        const Rational& now);

RunResult run(const Multigraph& g, const MachineDef& m, Configuration initial,
              const Rational& start, const RunLimits& limits);

}  // namespace mobsync
