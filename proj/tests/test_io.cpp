#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "mobsync/error.hpp"
#include "mobsync/fssp.hpp"
#include "mobsync/svg.hpp"
#include "mobsync/trace.hpp"
#include "test_util.hpp"

using namespace mobsync;
using namespace testutil;

namespace {

struct Fixture {
  Multigraph g = load(kPath3);
  RunResult r = run_machine(g, 1);
  std::string text = write_trace(g, 1, r);
};

}  // namespace

TEST_CASE("a run round-trips through its trace byte-identically") {
  Fixture f;
  LoadedTrace lt = read_trace(f.text);

  CHECK(lt.header.machine == "mobsync/1");
  CHECK(lt.header.general == "A");
  CHECK(lt.header.depth == 1);
  CHECK(lt.header.status == "quiescent");
  CHECK(lt.header.final_time == 6);
  CHECK(lt.header.graph_digest == graph_digest(f.g));
  CHECK(graph_digest(lt.graph) == graph_digest(f.g));
  REQUIRE(lt.batches.size() == f.r.batches.size());
  for (std::size_t i = 0; i < lt.batches.size(); ++i) {
    CHECK(lt.batches[i].time == f.r.batches[i].time);
    CHECK(lt.batches[i].entries.size() == f.r.batches[i].entries.size());
  }

  RunResult rebuilt;
  rebuilt.status = f.r.status;
  rebuilt.final_time = lt.header.final_time;
  rebuilt.batches = lt.batches;
  CHECK(write_trace(lt.graph, lt.header.depth, rebuilt) == f.text);

  // Serialization itself is deterministic.
  CHECK(write_trace(f.g, 1, f.r) == f.text);
}

TEST_CASE("an eventless run still round-trips") {
  Multigraph g = load(kUnitEdge);
  RunResult r;
  r.status = RunStatus::Quiescent;
  r.final_time = Rational(0);
  std::string text = write_trace(g, 1, r);
  LoadedTrace lt = read_trace(text);
  CHECK(lt.batches.empty());
  CHECK(lt.header.final_time == 0);
}

TEST_CASE("tampered traces are rejected") {
  Fixture f;
  auto tampered = [&](const std::string& from, const std::string& to) {
    std::string t = f.text;
    auto pos = t.find(from);
    REQUIRE_MESSAGE(pos != std::string::npos, from);
    t.replace(pos, from.size(), to);
    return code_of([&] { (void)read_trace(t); });
  };

  SUBCASE("rationals must be in lowest terms") {
    CHECK(tampered("\"3/2\"", "\"6/4\"") == Errc::ParseError);
  }
  SUBCASE("event times must stay increasing and within the final time") {
    CHECK(tampered("\"time\": \"1\"", "\"time\": \"100\"") ==
          Errc::ParseError);
  }
  SUBCASE("interior offsets must fit their edge") {
    CHECK(tampered("\"offset\": \"1/2\"", "\"offset\": \"3/2\"") ==
          Errc::ParseError);
  }
  SUBCASE("the embedded graph must match the digest") {
    CHECK(tampered("general A", "general B") == Errc::ParseError);
  }
  SUBCASE("header fields are mandatory") {
    CHECK(tampered("\"status\"", "\"status_was_here\"") == Errc::ParseError);
  }
  SUBCASE("the machine tag is checked") {
    CHECK(tampered("mobsync/1", "mobsync/9") == Errc::ParseError);
  }
  SUBCASE("malformed JSON") {
    CHECK(code_of([] { (void)read_trace("{"); }) == Errc::ParseError);
    CHECK(code_of([] { (void)read_trace("[]"); }) == Errc::ParseError);
    CHECK(code_of([] { (void)read_trace(""); }) == Errc::ParseError);
  }
}

TEST_CASE("space-time diagrams render every edge panel") {
  Fixture f;
  Machine m(1);
  std::string svg =
      render_svg(f.g, m.speeds(), Machine::initial_configuration(f.g, 1),
                 f.r.batches, f.r.final_time);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.rfind("</svg>") != std::string::npos);
  CHECK(svg.find("ab") != std::string::npos);
  CHECK(svg.find("bc") != std::string::npos);

  SvgOptions only_ab;
  only_ab.edges = {"ab"};
  std::string partial =
      render_svg(f.g, m.speeds(), Machine::initial_configuration(f.g, 1),
                 f.r.batches, f.r.final_time, only_ab);
  CHECK(partial.find("<svg") != std::string::npos);

  SvgOptions bad;
  bad.edges = {"nonesuch"};
  CHECK(code_of([&] {
          (void)render_svg(f.g, m.speeds(),
                           Machine::initial_configuration(f.g, 1),
                           f.r.batches, f.r.final_time, bad);
        }) == Errc::ParseError);
}
