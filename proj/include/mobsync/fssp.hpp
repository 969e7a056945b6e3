#pragma once

#include "mobsync/engine.hpp"

namespace mobsync {

// Kind names of the synchronisation machine's signals.
//
//   I      initiate front (speed 1)
//   L      virtual leaf, cuts an edge or vertex for signals heading into it
//   C      per-vertex count memory of returned marked probes
//   M      midpoint marker; datum: the two direction words to the path ends
//   U      probe (speed 1); datum: origin word
//   RU     reflected probe; datum: origin word, reflection word, mark
//   V      pace probe (speed 1/3); datum: direction, origin word,
//          reflection word, mark — meets the reflected probe at the midpoint
//   F      freeze front (speed 1)
//   T      thaw; datum: remaining word, thawing flag
//   Dn     divide signal of type n (speed (2/3)^n / (2 - (2/3)^n))
//   RD     reflected divide (speed 1)
//   B      boundary marker of a division
//   X      fire
//   FDn, FRD, FX   frozen counterparts (speed 0, heading preserved)
std::string divide_kind(int n);
std::string frozen_divide_kind(int n);
std::optional<int> divide_index(const std::string& kind);
std::optional<int> frozen_divide_index(const std::string& kind);

Signal sig_initiate(Direction d);
Signal sig_leaf(Direction d);
Signal sig_count(const std::set<Direction>& dirs);
Signal sig_midpoint(Word a, Word b);  // unordered; stored sorted
Signal sig_probe(Word origin, Direction d);
Signal sig_reflected_probe(Word origin, Direction d, Word reflection,
                           bool marked);
Signal sig_pace_probe(Direction d, Word origin, Word reflection, bool marked);
Signal sig_freeze(Direction d);
Signal sig_thaw(Direction d, Word w, bool thawing);
Signal sig_divide(int n, Direction d);
Signal sig_frozen_divide(int n, Direction heading);
Signal sig_bounce(Direction d);
Signal sig_frozen_bounce(Direction heading);
Signal sig_boundary();
Signal sig_fire();
Signal sig_frozen_fire();

// The time-optimal firing-mob synchronisation machine. `depth` caps the
// divide family at types 0..depth (depth >= 1).
class Machine {
 public:
  explicit Machine(int depth);

  int depth() const { return depth_; }
  const std::map<std::string, Rational>& speeds() const { return speeds_; }
  MachineDef def() const;

  // Cut-aware handlers (what the engine runs): they honour virtual-leaf
  // signals and create them where initiate fronts collide.
  SignalSet delta_edge(const SignalSet& s) const;
  SignalSet delta_vertex(const std::vector<Direction>& dirs,
                         const SignalSet& s) const;

  // Plain handlers without any virtual-leaf handling; equal to the above
  // wherever no leaf signal is present.
  SignalSet delta_edge_tree(const SignalSet& s) const;
  SignalSet delta_vertex_tree(const std::vector<Direction>& dirs,
                              const SignalSet& s) const;

  Signal frozen(const Signal& s) const;
  Signal thawed(const Signal& s) const;
  // Freeze/thaw post-processing of a handler result: with a freeze signal
  // present, freezable output is frozen unless it travels with the front;
  // with a completed thaw present, frozen output is woken.
  SignalSet nu(const SignalSet& before, const SignalSet& produced) const;

  static Configuration initial_configuration(const Multigraph& g, int depth);

 private:
  SignalSet delta_v1(const std::vector<Direction>& dirs, int n, bool first,
                     const Signal& s) const;
  std::optional<std::pair<int, SignalSet>> edge_pair_output(
      const Signal& a, const Signal& b) const;
  std::optional<std::pair<int, SignalSet>> vertex_pair_output(
      const std::vector<Direction>& dirs, int n, const Signal& a,
      const Signal& b) const;

  int depth_;
  std::map<std::string, Rational> speeds_;
};

}  // namespace mobsync
