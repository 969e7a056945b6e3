#include "mobsync/trace.hpp"

#include "json.hpp"

namespace mobsync {

namespace {

using json = nlohmann::ordered_json;

std::string rat(const Rational& r) { return to_string(r); }

Rational read_rat(const json& j, const char* what) {
  if (!j.is_string())
    throw Error(Errc::ParseError, std::string(what) + " must be a string");
  auto r = parse_rational(j.get<std::string>());
  if (!r)
    throw Error(Errc::ParseError,
                std::string(what) + " is not a rational: " + j.dump());
  if (to_string(*r) != j.get<std::string>())
    throw Error(Errc::ParseError, std::string(what) +
                                      " is not in lowest terms: " + j.dump());
  return *r;
}

json dir_to_json(const Multigraph& g, const Direction& d) {
  json j;
  j["edge"] = g.edge(d.edge).name;
  j["to"] = g.vertex_name(g.head(d));
  return j;
}

Direction dir_from_json(const Multigraph& g, const json& j) {
  if (!j.is_object() || !j.contains("edge") || !j.contains("to"))
    throw Error(Errc::ParseError, "direction needs edge and to: " + j.dump());
  EdgeId e = g.edge_index(j["edge"].get<std::string>());
  VertexId v = g.vertex_index(j["to"].get<std::string>());
  Direction d{e, 1};
  if (g.head(d) == v) return d;
  d.to_b = 0;
  if (g.head(d) == v) return d;
  throw Error(Errc::ParseError,
              "direction target is not an endpoint of the edge: " + j.dump());
}

json word_to_json(const Multigraph& g, const Word& w) {
  json a = json::array();
  for (const Direction& d : w) a.push_back(dir_to_json(g, d));
  return a;
}

Word word_from_json(const Multigraph& g, const json& j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "word must be an array");
  Word w;
  for (const json& item : j) w.push_back(dir_from_json(g, item));
  return w;
}

json signal_to_json(const Multigraph& g, const Signal& s) {
  json j;
  j["kind"] = s.kind;
  if (s.dir) j["dir"] = dir_to_json(g, *s.dir);
  if (!s.dirs.empty()) {
    json a = json::array();
    for (const Direction& d : s.dirs) a.push_back(dir_to_json(g, d));
    j["dirs"] = a;
  }
  if (!s.w1.empty()) j["w1"] = word_to_json(g, s.w1);
  if (!s.w2.empty()) j["w2"] = word_to_json(g, s.w2);
  if (s.flag) j["flag"] = true;
  return j;
}

Signal signal_from_json(const Multigraph& g, const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw Error(Errc::ParseError, "signal needs a kind: " + j.dump());
  Signal s;
  s.kind = j["kind"].get<std::string>();
  if (j.contains("dir")) s.dir = dir_from_json(g, j["dir"]);
  if (j.contains("dirs"))
    for (const json& item : j["dirs"]) s.dirs.insert(dir_from_json(g, item));
  if (j.contains("w1")) s.w1 = word_from_json(g, j["w1"]);
  if (j.contains("w2")) s.w2 = word_from_json(g, j["w2"]);
  if (j.contains("flag")) {
    if (!j["flag"].is_boolean())
      throw Error(Errc::ParseError, "flag must be boolean");
    s.flag = j["flag"].get<bool>();
  }
  return s;
}

json point_to_json(const Multigraph& g, const Point& p) {
  json j;
  if (p.is_vertex()) {
    j["vertex"] = g.vertex_name(p.vertex);
  } else {
    j["edge"] = g.edge(p.edge).name;
    j["offset"] = rat(p.offset);
  }
  return j;
}

Point point_from_json(const Multigraph& g, const json& j) {
  if (j.is_object() && j.contains("vertex"))
    return Point::at_vertex(g.vertex_index(j["vertex"].get<std::string>()));
  if (j.is_object() && j.contains("edge") && j.contains("offset")) {
    EdgeId e = g.edge_index(j["edge"].get<std::string>());
    Rational off = read_rat(j["offset"], "offset");
    if (off <= 0 || off >= g.edge(e).weight)
      throw Error(Errc::ParseError,
                  "interior point offset outside its edge: " + j.dump());
    return Point::make(g, e, off);
  }
  throw Error(Errc::ParseError, "point needs vertex or edge+offset");
}

}  // namespace

std::string status_string(RunStatus s) {
  switch (s) {
    case RunStatus::Quiescent: return "quiescent";
    case RunStatus::HorizonReached: return "horizon";
    case RunStatus::EventBudgetExhausted: return "budget";
    case RunStatus::SingularityMinusOne: return "singular";
  }
  return "unknown";
}

std::string write_trace(const Multigraph& g, int depth, const RunResult& r) {
  json root;
  json header;
  header["machine"] = "mobsync/1";
  header["graph"] = graph_digest(g);
  header["graph_text"] = serialize_multigraph(g);
  header["general"] = g.vertex_name(g.general());
  header["depth"] = depth;
  header["status"] = status_string(r.status);
  header["final_time"] = rat(r.final_time);
  root["header"] = header;
  json events = json::array();
  for (const EventBatch& b : r.batches) {
    for (const EventEntry& e : b.entries) {
      json ev;
      ev["time"] = rat(b.time);
      ev["point"] = point_to_json(g, e.point);
      json cons = json::array();
      for (const Signal& s : e.consumed) cons.push_back(signal_to_json(g, s));
      json prod = json::array();
      for (const Signal& s : e.produced) prod.push_back(signal_to_json(g, s));
      ev["consumed"] = cons;
      ev["produced"] = prod;
      events.push_back(ev);
    }
  }
  root["events"] = events;
  return root.dump(2) + "\n";
}

LoadedTrace read_trace(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const std::exception& ex) {
    throw Error(Errc::ParseError, std::string("invalid JSON: ") + ex.what());
  }
  if (!root.is_object() || !root.contains("header") ||
      !root.contains("events"))
    throw Error(Errc::ParseError, "trace needs header and events");
  const json& h = root["header"];
  for (const char* k :
       {"machine", "graph", "graph_text", "general", "status"})
    if (!h.contains(k) || !h[k].is_string())
      throw Error(Errc::ParseError,
                  std::string("header field missing or not a string: ") + k);
  if (!h.contains("depth") || !h["depth"].is_number_integer())
    throw Error(Errc::ParseError, "header depth must be an integer");
  if (!h.contains("final_time"))
    throw Error(Errc::ParseError, "header final_time missing");
  if (h["machine"].get<std::string>() != "mobsync/1")
    throw Error(Errc::ParseError,
                "unsupported machine: " + h["machine"].get<std::string>());

  LoadedTrace out;
  out.graph = parse_multigraph(h["graph_text"].get<std::string>());
  if (graph_digest(out.graph) != h["graph"].get<std::string>())
    throw Error(Errc::ParseError, "graph digest does not match graph text");
  if (out.graph.vertex_name(out.graph.general()) !=
      h["general"].get<std::string>())
    throw Error(Errc::ParseError, "header general does not match the graph");

  out.header.machine = h["machine"].get<std::string>();
  out.header.graph_digest = h["graph"].get<std::string>();
  out.header.graph_text = h["graph_text"].get<std::string>();
  out.header.general = h["general"].get<std::string>();
  out.header.depth = h["depth"].get<int>();
  out.header.status = h["status"].get<std::string>();
  out.header.final_time = read_rat(h["final_time"], "final_time");

  std::optional<Rational> prev_time;
  std::optional<Point> prev_point;
  for (const json& ev : root["events"]) {
    if (!ev.is_object() || !ev.contains("time") || !ev.contains("point") ||
        !ev.contains("consumed") || !ev.contains("produced"))
      throw Error(Errc::ParseError,
                  "event needs time, point, consumed, produced");
    Rational t = read_rat(ev["time"], "event time");
    Point p = point_from_json(out.graph, ev["point"]);
    if (prev_time) {
      bool increasing =
          t > *prev_time || (t == *prev_time && *prev_point < p);
      if (!increasing)
        throw Error(Errc::ParseError,
                    "events not strictly increasing by (time, point)");
    }
    if (t > out.header.final_time)
      throw Error(Errc::ParseError, "event after final_time");
    EventEntry entry;
    entry.point = p;
    for (const json& s : ev["consumed"])
      entry.consumed.insert(signal_from_json(out.graph, s));
    for (const json& s : ev["produced"])
      entry.produced.insert(signal_from_json(out.graph, s));
    if (!prev_time || t != *prev_time) {
      EventBatch b;
      b.time = t;
      out.batches.push_back(b);
    }
    out.batches.back().entries.push_back(std::move(entry));
    prev_time = t;
    prev_point = p;
  }
  return out;
}

}  // namespace mobsync
