#include "cpnsw/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "cpnsw/engine.hpp"
#include "cpnsw/metrics.hpp"
#include "cpnsw/netdump.hpp"
#include "cpnsw/scenario_io.hpp"

namespace cpnsw {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

std::string cell(std::optional<double> v, int width) {
  char b[32];
  if (v)
    std::snprintf(b, sizeof b, "%*.2f", width, *v);
  else
    std::snprintf(b, sizeof b, "%*s", width, "-");
  return b;
}

std::string int_cell(std::optional<TimeUnit> v, int width) {
  char b[32];
  if (v)
    std::snprintf(b, sizeof b, "%*lld", width, static_cast<long long>(*v));
  else
    std::snprintf(b, sizeof b, "%*s", width, "-");
  return b;
}

std::string stats_table(const RunStats& stats) {
  std::ostringstream out;
  out << "prio  generated  consumed  consumed%      mean       std     max  famine\n";
  for (const auto& [p, s] : stats.per_priority) {
    char line[160];
    std::snprintf(line, sizeof line, "%-4s  %9llu  %8llu  %8.2f%%  %s %s %s  %s\n",
                  priority_symbol(p), static_cast<unsigned long long>(s.generated),
                  static_cast<unsigned long long>(s.consumed),
                  100.0 * s.consumed_fraction, cell(s.delay_mean, 9).c_str(),
                  cell(s.delay_std, 9).c_str(), int_cell(s.delay_max, 7).c_str(),
                  s.famine ? "yes" : "no");
    out << line;
  }
  return out.str();
}

}  // namespace

int run_command(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  Scenario scenario;
  std::shared_ptr<const Net> net;
  try {
    if (is_builtin_scenario(inv.scenario)) {
      scenario = builtin_scenario(inv.scenario);
    } else {
      scenario = parse_scenario(read_file(inv.scenario));
    }
    if (inv.seed) scenario.seed = *inv.seed;
    if (inv.stop_steps) scenario.stop.max_steps = *inv.stop_steps;
    if (inv.stop_time) scenario.stop.max_time = *inv.stop_time;
    if (inv.weights) {
      if (scenario.scheduler.policy != SchedulerChoice::Policy::Wrr)
        throw std::runtime_error("--weights requires a wrr scenario");
      scenario.scheduler.weights = *inv.weights;
    }
    for (const auto& sel : inv.emit) {
      if (sel != "stats" && sel != "records" && sel != "trace" && sel != "net")
        throw std::runtime_error("unknown --emit selector '" + sel + "'");
    }
    scenario.validate();
    net = std::make_shared<Net>(flatten(assemble_switch(scenario)));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitBuildError;
  }

  try {
    Trace trace = run(net, scenario.stop.max_steps, scenario.stop.max_time, scenario.seed);
    auto records = extract_records(trace);
    auto stats = summarize(records);

    std::filesystem::path dir(inv.out_dir);
    std::filesystem::create_directories(dir);
    // Self-description: the normalized scenario reproduces this run exactly.
    write_file(dir / "scenario.json", normalize_scenario(scenario));
    if (inv.emit.count("stats")) write_file(dir / "stats.csv", stats_csv(stats));
    if (inv.emit.count("records")) write_file(dir / "records.csv", records_csv(records));
    if (inv.emit.count("trace")) write_file(dir / "trace.txt", trace.to_text());
    if (inv.emit.count("net")) write_file(dir / "net.txt", dump_net(*net));

    out << "scenario: " << inv.scenario << "  seed: " << scenario.seed
        << "  steps: " << trace.events.size() << "  clock: " << trace.final_clock
        << "\n";
    out << stats_table(stats);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace cpnsw
