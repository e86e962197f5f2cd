#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cpnsw/cli.hpp"
#include "cpnsw/metrics.hpp"
#include "cpnsw/netdump.hpp"
#include "cpnsw/scenario_io.hpp"

using namespace cpnsw;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "cpnsw_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("cli: sp-base run starves low priority but serves high") {
  auto dir = fresh_dir("sp_base");
  CliInvocation inv;
  inv.scenario = "sp-base";
  inv.out_dir = (dir / "run").string();
  inv.emit = {"stats", "records"};
  std::ostringstream out, err;
  int rc = run_command(inv, out, err);
  CHECK(rc == kExitOk);
  CHECK(err.str().empty());

  auto records = parse_records_csv(slurp(dir / "run" / "records.csv"));
  auto stats = summarize(records);
  CHECK(stats.per_priority.at(Priority::High).consumed_fraction > 0.95);
  CHECK(stats.per_priority.at(Priority::Low).famine);
  CHECK(out.str().find("famine") != std::string::npos);
  // normalized scenario always written (self-description)
  CHECK(fs::exists(dir / "run" / "scenario.json"));
}

TEST_CASE("cli: zero step budget produces an empty record set") {
  auto dir = fresh_dir("zero_steps");
  CliInvocation inv;
  inv.scenario = "sp-base";
  inv.stop_steps = 0;
  inv.out_dir = (dir / "run").string();
  std::ostringstream out, err;
  CHECK(run_command(inv, out, err) == kExitOk);
  CHECK(slurp(dir / "run" / "records.csv") == "seq,prio,port,created,consumed,delay\n");
  auto stats = parse_records_csv(slurp(dir / "run" / "records.csv"));
  CHECK(stats.empty());
}

TEST_CASE("cli: identical invocations produce byte-identical outputs") {
  auto dir = fresh_dir("determinism");
  for (int i = 0; i < 2; ++i) {
    CliInvocation inv;
    inv.scenario = "wrr-base";
    inv.seed = 7;
    inv.out_dir = (dir / ("run" + std::to_string(i))).string();
    inv.emit = {"stats", "records", "trace", "net"};
    std::ostringstream out, err;
    REQUIRE(run_command(inv, out, err) == kExitOk);
  }
  for (const char* f : {"scenario.json", "stats.csv", "records.csv", "trace.txt", "net.txt"})
    CHECK(slurp(dir / "run0" / f) == slurp(dir / "run1" / f));
}

TEST_CASE("cli: rerunning from the embedded normalized scenario reproduces outputs") {
  auto dir = fresh_dir("self_describe");
  CliInvocation inv;
  inv.scenario = "sp-congested";
  inv.out_dir = (dir / "a").string();
  inv.emit = {"stats", "records", "trace"};
  std::ostringstream out, err;
  REQUIRE(run_command(inv, out, err) == kExitOk);

  CliInvocation again;
  again.scenario = (dir / "a" / "scenario.json").string();
  again.out_dir = (dir / "b").string();
  again.emit = {"stats", "records", "trace"};
  std::ostringstream out2, err2;
  REQUIRE(run_command(again, out2, err2) == kExitOk);
  for (const char* f : {"scenario.json", "stats.csv", "records.csv", "trace.txt"})
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
}

TEST_CASE("cli: bad scenario file exits with the build error code") {
  auto dir = fresh_dir("bad_file");
  auto path = dir / "bad.json";
  std::ofstream(path) << R"({"scheduler": {"policy": "sp"}, "sources": [], "consumers": []})";
  CliInvocation inv;
  inv.scenario = path.string();
  inv.out_dir = (dir / "run").string();
  std::ostringstream out, err;
  CHECK(run_command(inv, out, err) == kExitBuildError);
  CHECK_FALSE(err.str().empty());

  CliInvocation missing;
  missing.scenario = (dir / "nope.json").string();
  std::ostringstream out2, err2;
  CHECK(run_command(missing, out2, err2) == kExitBuildError);
}

TEST_CASE("cli: weights override applies to wrr only") {
  auto dir = fresh_dir("weights");
  CliInvocation inv;
  inv.scenario = "sp-base";
  inv.weights = std::vector<int>{1, 1, 1};
  inv.out_dir = (dir / "run").string();
  std::ostringstream out, err;
  CHECK(run_command(inv, out, err) == kExitBuildError);

  CliInvocation ok;
  ok.scenario = "wrr-base";
  ok.weights = std::vector<int>{2, 1, 1};
  ok.stop_time = 50;
  ok.out_dir = (dir / "run2").string();
  std::ostringstream out2, err2;
  CHECK(run_command(ok, out2, err2) == kExitOk);
  auto norm = slurp(dir / "run2" / "scenario.json");
  CHECK(norm.find("[\n      2,\n      1,\n      1\n    ]") != std::string::npos);
}

TEST_CASE("net dump lists every place and transition of the flat net") {
  auto sc = builtin_scenario("sp-base");
  Net net = flatten(assemble_switch(sc));
  auto text = dump_net(net);
  std::size_t nodes = 0;
  std::size_t pos = 0;
  while ((pos = text.find("[shape=", pos)) != std::string::npos) {
    ++nodes;
    pos += 7;
  }
  CHECK(nodes == net.places.size() + net.transitions.size());
  for (const char* label : {"\"Ptr1\"", "\"Ptr2\"", "\"Ptr2'\"", "\"Pbp1\"", "\"Pbp2\""})
    CHECK(text.find(label) != std::string::npos);
}

TEST_CASE("net dump of an empty page has zero nodes") {
  Page empty;
  empty.id = "root";
  auto text = dump_net(flatten(empty));
  CHECK(text == "digraph net {\n}\n");
}

TEST_CASE("cli: unknown emit selector is a build error") {
  CliInvocation inv;
  inv.scenario = "sp-base";
  inv.emit = {"stats", "bogus"};
  std::ostringstream out, err;
  CHECK(run_command(inv, out, err) == kExitBuildError);
  CHECK(err.str().find("bogus") != std::string::npos);
}
