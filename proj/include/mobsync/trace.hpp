#pragma once

#include "mobsync/engine.hpp"

#include <iosfwd>
#include <string>

namespace mobsync {

struct TraceHeader {
  std::string machine = "mobsync/1";
  std::string graph_digest;
  std::string graph_text;  // canonical serialization, keeps traces portable
  std::string general;
  int depth = 0;
  std::string status;
  Rational final_time;
};

struct LoadedTrace {
  Multigraph graph;
  TraceHeader header;
  std::vector<EventBatch> batches;
};

std::string status_string(RunStatus s);

// JSON text of a finished run. Events are flattened and ordered strictly by
// (time, point); every rational is serialized in lowest terms.
std::string write_trace(const Multigraph& g, int depth, const RunResult& r);

// Parses and fully validates a trace produced by write_trace: canonical
// rationals, digest matching the embedded graph, strictly increasing
// (time, point) event order, interior offsets within their edges.
// Throws Error(Errc::ParseError) on any violation.
LoadedTrace read_trace(const std::string& text);

}  // namespace mobsync
