#include "mobsync/fssp.hpp"

#include <algorithm>

namespace mobsync {

namespace {

Word prepend(Direction d, const Word& w) {
  Word out;
  out.reserve(w.size() + 1);
  out.push_back(d);
  out.insert(out.end(), w.begin(), w.end());
  return out;
}

Word tail(const Word& w) { return Word(w.begin() + 1, w.end()); }

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool is_leaf(const std::vector<Direction>& dirs) { return dirs.size() == 1; }

// A probe's mark survives a vertex only while the count there still misses
// exactly one direction (the probe's own return route).
bool penultimate(const std::vector<Direction>& dirs, int n) {
  return static_cast<int>(dirs.size()) - 1 == n;
}

std::vector<Direction> spread_targets(const std::vector<Direction>& dirs,
                                      Direction arrived) {
  std::vector<Direction> out;
  Direction back = arrived.reverse();
  for (const Direction& e : dirs)
    if (!(e == back)) out.push_back(e);
  return out;
}

Rational mpow(long base, int n) {
  Rational r = 1;
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

struct PairMatch {
  int rule;
  std::size_t i, j;
  SignalSet out;
};

}  // namespace

std::string divide_kind(int n) { return "D" + std::to_string(n); }
std::string frozen_divide_kind(int n) { return "FD" + std::to_string(n); }

std::optional<int> divide_index(const std::string& kind) {
  if (kind.size() < 2 || kind[0] != 'D') return std::nullopt;
  for (std::size_t i = 1; i < kind.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(kind[i]))) return std::nullopt;
  return std::stoi(kind.substr(1));
}

std::optional<int> frozen_divide_index(const std::string& kind) {
  if (kind.size() < 3 || kind[0] != 'F' || kind[1] != 'D') return std::nullopt;
  for (std::size_t i = 2; i < kind.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(kind[i]))) return std::nullopt;
  return std::stoi(kind.substr(2));
}

Signal sig_initiate(Direction d) {
  Signal s;
  s.kind = "I";
  s.dir = d;
  return s;
}

Signal sig_leaf(Direction d) {
  Signal s;
  s.kind = "L";
  s.dir = d;  // the direction that is cut: signals travelling -d stop here
  return s;
}

Signal sig_count(const std::set<Direction>& dirs) {
  Signal s;
  s.kind = "C";
  s.dirs = dirs;
  return s;
}

Signal sig_midpoint(Word a, Word b) {
  Signal s;
  s.kind = "M";
  if (b < a) std::swap(a, b);
  s.w1 = std::move(a);
  s.w2 = std::move(b);
  return s;
}

Signal sig_probe(Word origin, Direction d) {
  Signal s;
  s.kind = "U";
  s.dir = d;
  s.w1 = std::move(origin);
  return s;
}

Signal sig_reflected_probe(Word origin, Direction d, Word reflection,
                           bool marked) {
  Signal s;
  s.kind = "RU";
  s.dir = d;
  s.w1 = std::move(origin);
  s.w2 = std::move(reflection);
  s.flag = marked;
  return s;
}

Signal sig_pace_probe(Direction d, Word origin, Word reflection, bool marked) {
  Signal s;
  s.kind = "V";
  s.dir = d;
  s.w1 = std::move(origin);
  s.w2 = std::move(reflection);
  s.flag = marked;
  return s;
}

Signal sig_freeze(Direction d) {
  Signal s;
  s.kind = "F";
  s.dir = d;
  return s;
}

Signal sig_thaw(Direction d, Word w, bool thawing) {
  Signal s;
  s.kind = "T";
  s.dir = d;
  s.w1 = std::move(w);
  s.flag = thawing;
  return s;
}

Signal sig_divide(int n, Direction d) {
  Signal s;
  s.kind = divide_kind(n);
  s.dir = d;
  return s;
}

Signal sig_frozen_divide(int n, Direction heading) {
  Signal s;
  s.kind = frozen_divide_kind(n);
  s.dir = heading;
  return s;
}

Signal sig_bounce(Direction d) {
  Signal s;
  s.kind = "RD";
  s.dir = d;
  return s;
}

Signal sig_frozen_bounce(Direction heading) {
  Signal s;
  s.kind = "FRD";
  s.dir = heading;
  return s;
}

Signal sig_boundary() {
  Signal s;
  s.kind = "B";
  return s;
}

Signal sig_fire() {
  Signal s;
  s.kind = "X";
  return s;
}

Signal sig_frozen_fire() {
  Signal s;
  s.kind = "FX";
  return s;
}

Machine::Machine(int depth) : depth_(depth) {
  if (depth < 1) throw Error(Errc::ParseError, "machine depth must be >= 1");
  for (const char* k : {"I", "U", "RU", "F", "T", "RD"}) speeds_[k] = 1;
  speeds_["V"] = Rational(1, 3);
  for (const char* k : {"L", "C", "M", "B", "X", "FX", "FRD"}) speeds_[k] = 0;
  for (int n = 0; n <= depth; ++n) {
    // (2/3)^n / (2 - (2/3)^n) = 2^n / (2*3^n - 2^n)
    Rational num = mpow(2, n);
    Rational den = 2 * mpow(3, n) - num;
    Rational v = num / den;
    v.canonicalize();
    speeds_[divide_kind(n)] = v;
    speeds_[frozen_divide_kind(n)] = 0;
  }
}

MachineDef Machine::def() const {
  MachineDef d;
  d.speeds = speeds_;
  Machine self = *this;
  d.delta_edge = [self](const SignalSet& s) { return self.delta_edge(s); };
  d.delta_vertex = [self](const std::vector<Direction>& dirs,
                          const SignalSet& s) {
    return self.delta_vertex(dirs, s);
  };
  return d;
}

Signal Machine::frozen(const Signal& s) const {
  if (auto n = divide_index(s.kind)) {
    Signal t = s;
    t.kind = frozen_divide_kind(*n);
    return t;
  }
  if (s.kind == "RD") {
    Signal t = s;
    t.kind = "FRD";
    return t;
  }
  if (s.kind == "X") {
    Signal t = s;
    t.kind = "FX";
    return t;
  }
  return s;
}

Signal Machine::thawed(const Signal& s) const {
  if (auto n = frozen_divide_index(s.kind)) {
    Signal t = s;
    t.kind = divide_kind(*n);
    return t;
  }
  if (s.kind == "FRD") {
    Signal t = s;
    t.kind = "RD";
    return t;
  }
  if (s.kind == "FX") {
    Signal t = s;
    t.kind = "X";
    return t;
  }
  return s;
}

SignalSet Machine::nu(const SignalSet& before, const SignalSet& produced) const {
  bool thaw = false;
  bool freeze = false;
  std::set<Direction> freeze_dirs;
  auto scan = [&](const SignalSet& set) {
    for (const Signal& s : set) {
      if (s.kind == "T" && s.flag && s.w1.empty()) thaw = true;
      if (s.kind == "F" && s.dir) {
        freeze = true;
        freeze_dirs.insert(*s.dir);
      }
    }
  };
  scan(before);
  scan(produced);
  if (thaw && !freeze) {
    SignalSet out;
    for (const Signal& s : produced) out.insert(thawed(s));
    return out;
  }
  if (freeze && !thaw) {
    SignalSet out;
    for (const Signal& s : produced) {
      // Signals moving exactly with a freeze front escape it: they arrive
      // wherever the front arrives, never strictly inside the frozen zone.
      bool escort = s.dir && speeds_.count(s.kind) &&
                    speeds_.at(s.kind) == 1 && freeze_dirs.count(*s.dir) > 0;
      out.insert(escort ? s : frozen(s));
    }
    return out;
  }
  return produced;
}

SignalSet Machine::delta_v1(const std::vector<Direction>& dirs, int n,
                            bool first, const Signal& s) const {
  bool leaf = is_leaf(dirs);
  if (s.kind == divide_kind(0)) return {sig_bounce(s.dir->reverse())};
  if (s.kind == "RD") return {sig_fire()};
  if (s.kind == "I") {
    SignalSet out;
    for (const Direction& e : spread_targets(dirs, *s.dir)) {
      out.insert(sig_initiate(e));
      for (int k = 0; k <= depth_; ++k) out.insert(sig_divide(k, e));
      out.insert(sig_probe({}, e));
      out.insert(sig_pace_probe(e, {}, {}, leaf));
    }
    return out;
  }
  if (s.kind == "U") {
    SignalSet out;
    out.insert(sig_reflected_probe(s.w1, s.dir->reverse(), {}, first && leaf));
    Word longer = prepend(s.dir->reverse(), s.w1);
    for (const Direction& e : spread_targets(dirs, *s.dir))
      out.insert(sig_probe(longer, e));
    return out;
  }
  if (s.kind == "RU") {
    Word refl = prepend(s.dir->reverse(), s.w2);
    bool keep = s.flag && penultimate(dirs, n);
    if (s.w1.empty()) {
      SignalSet out;
      for (const Direction& e : spread_targets(dirs, *s.dir))
        out.insert(sig_pace_probe(e, {}, refl, keep));
      return out;
    }
    return {sig_reflected_probe(tail(s.w1), s.w1.front(), refl, keep)};
  }
  if (s.kind == "V") {
    SignalSet out;
    Word origin = prepend(s.dir->reverse(), s.w1);
    bool keep = s.flag && penultimate(dirs, n);
    for (const Direction& e : spread_targets(dirs, *s.dir))
      out.insert(sig_pace_probe(e, origin, s.w2, keep));
    return out;
  }
  if (s.kind == "F") return {};
  if (s.kind == "T") {
    if (s.flag && s.w1.empty()) return {sig_fire()};
    if (!s.flag && !s.w1.empty())
      return {sig_thaw(s.w1.front(), tail(s.w1), false)};
    throw Error(Errc::HandlerDomainViolation,
                "thaw signal reached a vertex in a state with no rule");
  }
  auto it = speeds_.find(s.kind);
  if (it == speeds_.end())
    throw Error(Errc::HandlerDomainViolation, "unknown kind " + s.kind);
  if (it->second == 0) return {s};
  SignalSet out;
  for (const Direction& e : spread_targets(dirs, *s.dir)) {
    Signal t = s;
    t.dir = e;
    out.insert(t);
  }
  return out;
}

std::optional<std::pair<int, SignalSet>> Machine::edge_pair_output(
    const Signal& a, const Signal& b) const {
  const Signal* x = &a;
  const Signal* y = &b;
  for (int swap = 0; swap < 2; ++swap, std::swap(x, y)) {
    if (x->kind == divide_kind(0) && y->kind == "B")
      return {{1, {sig_bounce(x->dir->reverse()), sig_boundary()}}};
  }
  for (int swap = 0; swap < 2; ++swap, std::swap(x, y)) {
    if (x->kind == "RD" && y->kind == "B") return {{2, {sig_fire()}}};
  }
  for (int swap = 0; swap < 2; ++swap, std::swap(x, y)) {
    auto n = divide_index(y->kind);
    if (x->kind == "RD" && n && *n >= 1 && *x->dir == y->dir->reverse()) {
      SignalSet out{sig_bounce(*x->dir), sig_boundary()};
      for (int k = 0; k < *n; ++k) out.insert(sig_divide(k, *y->dir));
      return {{3, out}};
    }
  }
  for (int swap = 0; swap < 2; ++swap, std::swap(x, y)) {
    if (x->kind == "RU" && y->kind == "V" && *y->dir == x->dir->reverse() &&
        x->w1.empty() && x->w2.empty() && y->w1.empty() && y->w2.empty()) {
      Direction d = *x->dir;
      if (x->flag && y->flag)
        return {{4,
                 {sig_thaw(d.reverse(), {}, true), sig_thaw(d, {}, true),
                  sig_freeze(d.reverse()), sig_freeze(d)}}};
      return {{4,
               {*x, *y, sig_midpoint({d.reverse()}, {d}),
                sig_freeze(d.reverse()), sig_freeze(d)}}};
    }
  }
  for (int swap = 0; swap < 2; ++swap, std::swap(x, y)) {
    if (x->kind == "RU" && y->kind == "V" && *y->dir == x->dir->reverse() &&
        x->w1 == y->w1) {
      Direction d = *x->dir;
      Word wa = x->w2;                    // back toward the reflection end
      Word wb = concat(y->w1, y->w2);     // on toward the pace probe's origin
      if (x->flag && y->flag)
        return {{5,
                 {sig_thaw(d.reverse(), wa, false), sig_thaw(d, wb, false)}}};
      return {{5,
               {*x, *y,
                sig_midpoint(prepend(d.reverse(), wa), prepend(d, wb))}}};
    }
  }
  for (int swap = 0; swap < 2; ++swap, std::swap(x, y)) {
    if (x->kind == "T" && !x->flag && y->kind == "M") {
      Word full = prepend(*x->dir, x->w1);
      const Word* other = nullptr;
      if (full == y->w1)
        other = &y->w2;
      else if (full == y->w2)
        other = &y->w1;
      if (other && !other->empty()) {
        bool done = x->w1.empty() && other->size() == 1;
        return {{6,
                 {sig_thaw(*x->dir, x->w1, done),
                  sig_thaw(other->front(), tail(*other), done)}}};
      }
    }
  }
  return std::nullopt;
}

std::optional<std::pair<int, SignalSet>> Machine::vertex_pair_output(
    const std::vector<Direction>& dirs, int n, const Signal& a,
    const Signal& b) const {
  const Signal* x = &a;
  const Signal* y = &b;
  for (int swap = 0; swap < 2; ++swap, std::swap(x, y)) {
    if (x->kind == "RD" && y->kind == "B") return {{1, {sig_fire()}}};
  }
  for (int swap = 0; swap < 2; ++swap, std::swap(x, y)) {
    if (x->kind == "RU" && y->kind == "V" && !x->w1.empty() &&
        x->w1.front() == y->dir->reverse() && tail(x->w1) == y->w1) {
      Word wa = x->w2;
      Word wb = concat(y->w1, y->w2);
      if (x->flag && y->flag)
        return {{2,
                 {sig_thaw(x->dir->reverse(), wa, false),
                  sig_thaw(y->dir->reverse(), wb, false)}}};
      SignalSet out = delta_v1(dirs, n, false, *x);
      SignalSet more = delta_v1(dirs, n, false, *y);
      out.insert(more.begin(), more.end());
      out.insert(sig_midpoint(prepend(x->dir->reverse(), wa),
                              prepend(y->dir->reverse(), wb)));
      return {{2, out}};
    }
  }
  if (a.kind == "RU" && b.kind == "RU" && a.w1.empty() && b.w1.empty()) {
    if (a.flag && b.flag && n == static_cast<int>(dirs.size()))
      return {{3,
               {sig_thaw(a.dir->reverse(), a.w2, false),
                sig_thaw(b.dir->reverse(), b.w2, false)}}};
    SignalSet out = delta_v1(dirs, n, false, a);
    SignalSet more = delta_v1(dirs, n, false, b);
    out.insert(more.begin(), more.end());
    out.insert(sig_midpoint(prepend(a.dir->reverse(), a.w2),
                            prepend(b.dir->reverse(), b.w2)));
    return {{3, out}};
  }
  for (int swap = 0; swap < 2; ++swap, std::swap(x, y)) {
    if (x->kind == "T" && !x->flag && !x->w1.empty() && y->kind == "M") {
      const Word* other = nullptr;
      if (x->w1 == y->w1)
        other = &y->w2;
      else if (x->w1 == y->w2)
        other = &y->w1;
      if (other && !other->empty()) {
        return {{4,
                 {sig_thaw(x->w1.front(), tail(x->w1), false),
                  sig_thaw(other->front(), tail(*other), false)}}};
      }
    }
  }
  return std::nullopt;
}

namespace {

// Applies pair rules over a set: every matching pair contributes its output
// (a signal may sit in several pairs of the same rule, as happens where
// symmetric returns meet); signals in no pair are handled by `single`.
// Pairs of *different* rules sharing a signal have no coherent joint
// reading and abort the run.
template <typename PairFn, typename SingleFn>
SignalSet apply_pair_rules(const SignalSet& s, PairFn&& pair_out,
                           SingleFn&& single) {
  std::vector<Signal> v(s.begin(), s.end());
  std::vector<PairMatch> matches;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (auto m = pair_out(v[i], v[j]))
        matches.push_back({m->first, i, j, std::move(m->second)});
  std::vector<int> rule_of(v.size(), 0);
  for (const PairMatch& m : matches)
    for (std::size_t k : {m.i, m.j}) {
      if (rule_of[k] != 0 && rule_of[k] != m.rule)
        throw Error(Errc::PairOverlap,
                    "signal matched by two different pair rules");
      rule_of[k] = m.rule;
    }
  SignalSet out;
  for (const PairMatch& m : matches) out.insert(m.out.begin(), m.out.end());
  for (std::size_t k = 0; k < v.size(); ++k)
    if (rule_of[k] == 0) {
      SignalSet one = single(v[k]);
      out.insert(one.begin(), one.end());
    }
  return out;
}

}  // namespace

SignalSet Machine::delta_edge_tree(const SignalSet& s) const {
  SignalSet out = apply_pair_rules(
      s, [&](const Signal& a, const Signal& b) { return edge_pair_output(a, b); },
      [&](const Signal& x) { return SignalSet{x}; });
  return nu(s, out);
}

SignalSet Machine::delta_vertex_tree(const std::vector<Direction>& dirs,
                                     const SignalSet& s) const {
  std::set<Direction> kappa;
  bool first = false;
  for (const Signal& sig : s) {
    if (sig.kind == "C") kappa.insert(sig.dirs.begin(), sig.dirs.end());
    if (sig.kind == "I") first = true;
    if (sig.kind == "RU" && sig.flag && sig.w1.empty())
      kappa.insert(sig.dir->reverse());
    if (sig.kind == "V" && sig.flag) kappa.insert(sig.dir->reverse());
  }
  int n = static_cast<int>(kappa.size());
  SignalSet core;
  for (const Signal& sig : s)
    if (sig.kind != "C") core.insert(sig);
  SignalSet out = apply_pair_rules(
      core,
      [&](const Signal& a, const Signal& b) {
        return vertex_pair_output(dirs, n, a, b);
      },
      [&](const Signal& x) { return delta_v1(dirs, n, first, x); });
  if (!kappa.empty() && dirs.size() > 1) out.insert(sig_count(kappa));
  return nu(s, out);
}

SignalSet Machine::delta_edge(const SignalSet& s) const {
  std::set<Direction> meeting;
  for (const Signal& sig : s)
    if (sig.kind == "I") meeting.insert(sig.dir->reverse());
  SignalSet full = s;
  if (meeting.size() >= 2)
    for (const Direction& d : meeting) full.insert(sig_leaf(d));
  std::set<Direction> cuts;
  for (const Signal& sig : full)
    if (sig.kind == "L") cuts.insert(*sig.dir);
  if (cuts.empty()) return delta_edge_tree(s);

  SignalSet out;
  std::map<Direction, SignalSet> sides;
  for (const Signal& sig : full) {
    if (sig.kind == "L") {
      out.insert(sig);
      continue;
    }
    bool mover = sig.dir && speeds_.count(sig.kind) && speeds_.at(sig.kind) != 0;
    if (mover && cuts.count(sig.dir->reverse())) {
      sides[sig.dir->reverse()].insert(sig);
    } else {
      // Heading away from every cut, or parked here by an earlier
      // sub-event (a fire stays where it happened): unaffected.
      out.insert(sig);
    }
  }
  for (const auto& [d, side] : sides) {
    SignalSet sub = delta_vertex_tree({d}, side);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

SignalSet Machine::delta_vertex(const std::vector<Direction>& dirs,
                                const SignalSet& s) const {
  std::set<Direction> meeting;
  for (const Signal& sig : s)
    if (sig.kind == "I") meeting.insert(sig.dir->reverse());
  SignalSet full = s;
  if (meeting.size() >= 2) {
    std::set<Direction> all(dirs.begin(), dirs.end());
    if (meeting == all) {
      for (const Direction& d : meeting) full.insert(sig_leaf(d));
    } else {
      // Fronts met at a vertex that still has untouched directions: the
      // continuum stays connected through one of the meeting directions
      // (the least, for determinism) and the others become leaves.
      Direction keep = *meeting.begin();
      for (const Direction& d : meeting)
        if (!(d == keep)) full.insert(sig_leaf(d));
    }
  }
  std::set<Direction> cuts;
  for (const Signal& sig : full)
    if (sig.kind == "L") cuts.insert(*sig.dir);
  if (cuts.empty()) return delta_vertex_tree(dirs, s);

  SignalSet out;
  std::map<Direction, SignalSet> sides;
  SignalSet open_side;
  for (const Signal& sig : full) {
    if (sig.kind == "L") {
      out.insert(sig);
      continue;
    }
    bool mover = sig.dir && speeds_.count(sig.kind) && speeds_.at(sig.kind) != 0;
    if (mover && cuts.count(sig.dir->reverse()))
      sides[sig.dir->reverse()].insert(sig);
    else
      open_side.insert(sig);
  }
  for (const auto& [d, side] : sides) {
    SignalSet sub = delta_vertex_tree({d}, side);
    out.insert(sub.begin(), sub.end());
  }
  std::vector<Direction> open;
  for (const Direction& d : dirs)
    if (!cuts.count(d)) open.push_back(d);
  if (!open_side.empty()) {
    if (open.empty()) {
      for (const Signal& sig : open_side) {
        bool mover =
            sig.dir && speeds_.count(sig.kind) && speeds_.at(sig.kind) != 0;
        if (mover)
          throw Error(Errc::HandlerDomainViolation,
                      "moving signal stranded at a fully cut vertex");
        out.insert(sig);  // parked here by an earlier sub-event
      }
    } else {
      SignalSet sub = delta_vertex_tree(open, open_side);
      out.insert(sub.begin(), sub.end());
    }
  }
  return out;
}

Configuration Machine::initial_configuration(const Multigraph& g, int depth) {
  Configuration c;
  VertexId gen = g.general();
  std::vector<Direction> dirs = g.outgoing_directions(gen);
  bool leaf = dirs.size() == 1;
  SignalSet& at = c[Point::at_vertex(gen)];
  for (const Direction& d : dirs) {
    at.insert(sig_initiate(d));
    for (int k = 0; k <= depth; ++k) at.insert(sig_divide(k, d));
    at.insert(sig_probe({}, d));
    at.insert(sig_pace_probe(d, {}, {}, leaf));
  }
  return c;
}

}  // namespace mobsync
