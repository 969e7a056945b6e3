#include "CLI11.hpp"
#include "json.hpp"

#include "mobsync/fssp.hpp"
#include "mobsync/oracle.hpp"
#include "mobsync/svg.hpp"
#include "mobsync/trace.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using mobsync::Errc;
using mobsync::Error;
using mobsync::to_string;
using json = nlohmann::ordered_json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ParseError, "cannot write " + path);
  out << text;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::ParseError:
    case Errc::SelfLoop:
    case Errc::NonPositiveWeight:
    case Errc::Disconnected:
    case Errc::Trivial:
    case Errc::BadPoint:
      return 2;
    default:
      return 4;
  }
}

std::string dir_name(const mobsync::Multigraph& g, const mobsync::Direction& d) {
  return g.edge(d.edge).name + ">" + g.vertex_name(g.head(d));
}

json point_json(const mobsync::Multigraph& g, const mobsync::Point& p) {
  json j;
  if (p.is_vertex()) {
    j["vertex"] = g.vertex_name(p.vertex);
  } else {
    j["edge"] = g.edge(p.edge).name;
    j["offset"] = to_string(p.offset);
  }
  return j;
}

struct SimulateArgs {
  std::string graph_path;
  int depth = 2;
  std::string horizon;
  long max_events = 200000;
  std::string trace_path, svg_path;
  std::vector<std::string> edges;
};

int run_simulate(const SimulateArgs& a) {
  mobsync::Multigraph g = mobsync::parse_multigraph(slurp(a.graph_path));
  mobsync::Machine machine(a.depth);
  mobsync::RunLimits limits;
  limits.max_events = a.max_events;
  if (!a.horizon.empty()) {
    auto h = mobsync::parse_rational(a.horizon);
    if (!h) throw Error(Errc::ParseError, "invalid --horizon rational");
    limits.horizon = *h;
  }
  mobsync::Configuration initial =
      mobsync::Machine::initial_configuration(g, a.depth);
  mobsync::RunResult r = mobsync::run(g, machine.def(), initial, 0, limits);

  long events = 0;
  std::set<mobsync::Rational> fire_times;
  long fires = 0;
  for (const auto& b : r.batches) {
    events += static_cast<long>(b.entries.size());
    for (const auto& e : b.entries)
      for (const auto& s : e.produced)
        if (s.kind == "X") {
          ++fires;
          fire_times.insert(b.time);
        }
  }
  std::cout << "status: " << mobsync::status_string(r.status) << "\n";
  std::cout << "final_time: " << to_string(r.final_time) << "\n";
  std::cout << "events: " << events << "\n";
  std::cout << "fires: " << fires;
  if (!fire_times.empty()) {
    std::cout << " at";
    for (const auto& t : fire_times) std::cout << " " << to_string(t);
  }
  std::cout << "\n";
  if (!a.trace_path.empty())
    spill(a.trace_path, mobsync::write_trace(g, a.depth, r));
  if (!a.svg_path.empty()) {
    mobsync::SvgOptions opt;
    opt.edges = a.edges;
    spill(a.svg_path, mobsync::render_svg(g, machine.speeds(), initial,
                                          r.batches, r.final_time, opt));
  }
  if (r.status == mobsync::RunStatus::EventBudgetExhausted ||
      r.status == mobsync::RunStatus::SingularityMinusOne)
    return 3;
  return 0;
}

json class_json(const mobsync::Multigraph& g, const mobsync::PathEntry& e) {
  json j;
  json path = json::array();
  for (const auto& d : e.dirs) path.push_back(dir_name(g, d));
  j["path"] = path;
  j["from"] = g.vertex_name(e.from);
  j["to"] = g.vertex_name(e.to);
  j["weight"] = to_string(e.weight);
  mobsync::Midpoint m = mobsync::path_midpoint(g, e);
  j["midpoint"] = point_json(g, m.point);
  j["midpoint_time"] = to_string(m.time);
  return j;
}

int run_oracle(const std::string& graph_path, const std::string& report_path) {
  mobsync::Multigraph g = mobsync::parse_multigraph(slurp(graph_path));
  json rep;
  rep["graph"] = mobsync::graph_digest(g);
  rep["general"] = g.vertex_name(g.general());
  mobsync::MetricSummary ms = mobsync::metric_summary(g);
  rep["eccentricity"] = to_string(ms.radius);
  rep["diameter"] = to_string(ms.diameter);
  rep["sync_time"] = to_string(mobsync::sync_time(g));
  bool tree = g.edge_count() + 1 == g.vertex_count();
  rep["is_tree"] = tree;

  std::vector<mobsync::CutPoint> cuts = mobsync::cut_points(g);
  json jcuts = json::array();
  for (const auto& c : cuts) {
    json j;
    j["point"] = point_json(g, c.point);
    j["time"] = to_string(c.time);
    json dirs = json::array();
    for (const auto& d : c.cut) dirs.push_back(dir_name(g, d));
    j["cut"] = dirs;
    jcuts.push_back(j);
  }
  rep["cut_points"] = jcuts;

  mobsync::Multigraph target = mobsync::virtual_tree(g);
  rep["virtual_sync_time"] = to_string(mobsync::sync_time(target));
  if (!tree) rep["virtual_tree"] = mobsync::serialize_multigraph(target);

  mobsync::PathCatalog catalog(target);
  json classes = json::array();
  for (const auto& [key, e] : catalog.classes())
    classes.push_back(class_json(target, e));
  rep["classes"] = classes;
  mobsync::Midpoint root = mobsync::longest_midpoint(target, catalog);
  json jroot;
  jroot["point"] = point_json(target, root.point);
  jroot["time"] = to_string(root.time);
  rep["longest_midpoint"] = jroot;
  mobsync::ThawGraph thaw = mobsync::thaw_graph(target, catalog);
  json jthaw;
  jthaw["nodes"] = thaw.nodes.size();
  jthaw["edges"] = thaw.edges.size();
  jthaw["roots"] = thaw.roots.size();
  rep["thaw"] = jthaw;

  std::string text = rep.dump(2) + "\n";
  if (report_path.empty())
    std::cout << text;
  else
    spill(report_path, text);
  return 0;
}

int run_verify(const std::string& graph_path, int depth) {
  mobsync::Multigraph g = mobsync::parse_multigraph(slurp(graph_path));
  int failures = 0;
  auto check = [&](const std::string& name, bool ok, const std::string& note) {
    std::cout << (ok ? "ok   " : "FAIL ") << name;
    if (!note.empty()) std::cout << "  (" << note << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  };

  mobsync::Multigraph target = mobsync::virtual_tree(g);
  std::string oracle_note;
  bool oracle_ok = true;
  try {
    mobsync::PathCatalog catalog(target);
    mobsync::longest_midpoint(target, catalog);
    mobsync::thaw_graph(target, catalog);
  } catch (const Error& e) {
    oracle_ok = false;
    oracle_note = e.what();
  }
  check("oracle structures", oracle_ok, oracle_note);

  mobsync::Machine machine(depth);
  mobsync::Configuration initial =
      mobsync::Machine::initial_configuration(g, depth);
  mobsync::RunResult r =
      mobsync::run(g, machine.def(), initial, 0, mobsync::RunLimits{});
  check("run quiescent", r.status == mobsync::RunStatus::Quiescent,
        "status " + mobsync::status_string(r.status));

  bool monotone = true;
  for (std::size_t i = 1; i < r.batches.size(); ++i)
    if (!(r.batches[i - 1].time < r.batches[i].time)) monotone = false;
  check("event times strictly increasing", monotone, "");

  mobsync::Rational want = mobsync::virtual_sync_time(g);
  bool fires_ok = true;
  bool any_fire = false;
  for (const auto& b : r.batches)
    for (const auto& e : b.entries)
      for (const auto& s : e.produced)
        if (s.kind == "X") {
          any_fire = true;
          if (b.time != want) fires_ok = false;
        }
  check("fires exactly at " + to_string(want), any_fire && fires_ok, "");

  std::string text = mobsync::write_trace(g, depth, r);
  mobsync::LoadedTrace back = mobsync::read_trace(text);
  check("trace round-trip",
        mobsync::write_trace(back.graph, back.header.depth,
                             mobsync::RunResult{r.status, r.final_time,
                                                {}, back.batches}) == text,
        "");
  return failures == 0 ? 0 : 1;
}

int run_diagram(const std::string& trace_path, const std::string& svg_path,
                const std::vector<std::string>& edges) {
  mobsync::LoadedTrace t = mobsync::read_trace(slurp(trace_path));
  mobsync::Machine machine(t.header.depth);
  mobsync::Configuration initial =
      mobsync::Machine::initial_configuration(t.graph, t.header.depth);
  mobsync::SvgOptions opt;
  opt.edges = edges;
  spill(svg_path,
        mobsync::render_svg(t.graph, machine.speeds(), initial, t.batches,
                            t.header.final_time, opt));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"event-driven simulator for signal machines on weighted multigraph continua"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "run the synchronisation machine on a graph");
  simulate->add_option("graph", sim.graph_path, "graph file")->required();
  simulate->add_option("--depth", sim.depth, "divide family depth (>= 1)")
      ->check(CLI::Range(1, 12));
  simulate->add_option("--horizon", sim.horizon,
                       "stop at this time (rational, e.g. 7/2)");
  simulate->add_option("--max-events", sim.max_events, "event budget");
  simulate->add_option("--trace", sim.trace_path, "write JSON trace here");
  simulate->add_option("--svg", sim.svg_path, "write space-time SVG here");
  simulate->add_option("--edges", sim.edges, "edges to draw in the SVG");

  std::string oracle_graph, oracle_report;
  CLI::App* oracle =
      app.add_subcommand("oracle", "analytic report for a graph");
  oracle->add_option("graph", oracle_graph, "graph file")->required();
  oracle->add_option("--report", oracle_report, "write the JSON report here");

  std::string verify_graph;
  int verify_depth = 2;
  CLI::App* verify = app.add_subcommand(
      "verify", "run and compare against the analytic predictions");
  verify->add_option("graph", verify_graph, "graph file")->required();
  verify->add_option("--depth", verify_depth, "divide family depth")
      ->check(CLI::Range(1, 12));

  std::string diagram_trace, diagram_svg;
  std::vector<std::string> diagram_edges;
  CLI::App* diagram =
      app.add_subcommand("diagram", "render an SVG from a saved trace");
  diagram->add_option("trace", diagram_trace, "trace file")->required();
  diagram->add_option("--svg", diagram_svg, "output SVG path")->required();
  diagram->add_option("--edges", diagram_edges, "edges to draw");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (oracle->parsed()) return run_oracle(oracle_graph, oracle_report);
    if (verify->parsed()) return run_verify(verify_graph, verify_depth);
    if (diagram->parsed())
      return run_diagram(diagram_trace, diagram_svg, diagram_edges);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
