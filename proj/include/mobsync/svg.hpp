#pragma once

#include "mobsync/engine.hpp"

#include <string>
#include <vector>

namespace mobsync {

struct SvgOptions {
  std::vector<std::string> edges;  // edge names to draw; empty draws all
  double width_per_unit = 170;     // pixels per unit of edge weight
  double height_per_unit = 95;     // pixels per unit of time
};

// Space-time diagram of a run: one panel per edge, position across,
// time downward. Signal trajectories are reconstructed by replaying the
// event batches from the initial configuration.
std::string render_svg(const Multigraph& g,
                       const std::map<std::string, Rational>& speeds,
                       const Configuration& initial,
                       const std::vector<EventBatch>& batches,
                       const Rational& final_time,
                       const SvgOptions& opt = {});

}  // namespace mobsync
