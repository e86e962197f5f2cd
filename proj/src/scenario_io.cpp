#include "cpnsw/scenario_io.hpp"

#include <json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cpnsw {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("scenario: " + what);
}

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail("unknown key '" + key + "' in " + where);
  }
}

std::int64_t get_int(const json& obj, const std::string& where, const std::string& key,
                     std::int64_t fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) fail("missing key '" + key + "' in " + where);
    return fallback;
  }
  if (!obj[key].is_number_integer()) fail("'" + key + "' in " + where + " must be an integer");
  return obj[key].get<std::int64_t>();
}

std::string get_str(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key) || !obj[key].is_string())
    fail("missing string key '" + key + "' in " + where);
  return obj[key].get<std::string>();
}

std::size_t line_of_offset(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("scenario: syntax error at line " +
                             std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
  }
  if (!root.is_object()) fail("top level must be an object");
  check_keys(root, "scenario",
             {"seed", "stop", "scheduler", "switch", "sources", "consumers"});

  Scenario sc;
  sc.seed = static_cast<std::uint64_t>(get_int(root, "scenario", "seed", 1));

  if (root.contains("stop")) {
    const auto& stop = root["stop"];
    check_keys(stop, "stop", {"steps", "time"});
    std::int64_t steps = get_int(stop, "stop", "steps", 10000);
    std::int64_t time = get_int(stop, "stop", "time", 565);
    if (steps < 0 || time < 0) fail("stop bounds must be non-negative");
    sc.stop.max_steps = static_cast<std::uint64_t>(steps);
    sc.stop.max_time = time;
  }

  if (!root.contains("scheduler")) fail("missing 'scheduler'");
  {
    const auto& sch = root["scheduler"];
    check_keys(sch, "scheduler", {"policy", "weights"});
    std::string policy = get_str(sch, "scheduler", "policy");
    if (policy == "sp") {
      sc.scheduler = SchedulerChoice::static_priority();
      if (sch.contains("weights")) fail("'weights' is only valid with the wrr policy");
    } else if (policy == "wrr") {
      if (!sch.contains("weights") || !sch["weights"].is_array())
        fail("wrr scheduler needs a 'weights' array");
      std::vector<int> w;
      for (const auto& x : sch["weights"]) {
        if (!x.is_number_integer()) fail("weights must be integers");
        w.push_back(x.get<int>());
      }
      sc.scheduler = SchedulerChoice::wrr(std::move(w));
    } else {
      fail("unknown scheduler policy '" + policy + "' (expected sp or wrr)");
    }
  }

  if (root.contains("switch")) {
    const auto& sw = root["switch"];
    check_keys(sw, "switch", {"output_ports", "priorities", "stage_delays"});
    if (sw.contains("output_ports")) {
      sc.switch_config.output_ports.clear();
      for (const auto& p : sw["output_ports"]) {
        if (!p.is_string()) fail("output_ports must be strings");
        sc.switch_config.output_ports.push_back(p.get<std::string>());
      }
    }
    if (sw.contains("priorities")) {
      sc.switch_config.priorities.clear();
      for (const auto& p : sw["priorities"]) {
        if (!p.is_string()) fail("priorities must be symbols (H, M, b)");
        sc.switch_config.priorities.push_back(priority_from_symbol(p.get<std::string>()));
      }
    }
    if (sw.contains("stage_delays")) {
      const auto& d = sw["stage_delays"];
      check_keys(d, "stage_delays", {"ingress_fifo", "demux", "queue", "transmit"});
      auto& sd = sc.switch_config.stage_delays;
      sd.ingress_fifo = get_int(d, "stage_delays", "ingress_fifo", sd.ingress_fifo);
      sd.demux = get_int(d, "stage_delays", "demux", sd.demux);
      sd.queue = get_int(d, "stage_delays", "queue", sd.queue);
      sd.transmit = get_int(d, "stage_delays", "transmit", sd.transmit);
    }
  }

  if (!root.contains("sources") || !root["sources"].is_array() || root["sources"].empty())
    fail("missing 'sources' array");
  for (const auto& s : root["sources"]) {
    check_keys(s, "source", {"period", "start_offset", "emissions"});
    SourceSpec spec;
    spec.period = get_int(s, "source", "period", 5);
    spec.start_offset = get_int(s, "source", "start_offset", 0);
    if (!s.contains("emissions") || !s["emissions"].is_array() || s["emissions"].empty())
      fail("source needs a non-empty 'emissions' array");
    for (const auto& e : s["emissions"]) {
      check_keys(e, "emission", {"port", "prio", "count"});
      Emission em;
      em.outp = get_str(e, "emission", "port");
      em.prio = priority_from_symbol(get_str(e, "emission", "prio"));
      em.count = static_cast<int>(get_int(e, "emission", "count", 1));
      spec.emissions.push_back(std::move(em));
    }
    sc.sources.push_back(std::move(spec));
  }

  if (!root.contains("consumers") || !root["consumers"].is_array() || root["consumers"].empty())
    fail("missing 'consumers' array");
  for (const auto& c : root["consumers"]) {
    check_keys(c, "consumer", {"period", "port", "fold", "start_offset"});
    ConsumerSpec spec;
    spec.period = get_int(c, "consumer", "period", 5);
    spec.port = get_str(c, "consumer", "port");
    spec.fold = static_cast<int>(get_int(c, "consumer", "fold", 3));
    spec.start_offset = get_int(c, "consumer", "start_offset", 0);
    sc.consumers.push_back(std::move(spec));
  }

  sc.validate();
  return sc;
}

std::string normalize_scenario(const Scenario& sc) {
  json root;
  root["seed"] = sc.seed;
  root["stop"] = {{"steps", sc.stop.max_steps}, {"time", sc.stop.max_time}};
  if (sc.scheduler.policy == SchedulerChoice::Policy::Wrr) {
    root["scheduler"] = {{"policy", "wrr"}, {"weights", sc.scheduler.weights}};
  } else {
    root["scheduler"] = {{"policy", "sp"}};
  }
  json sw;
  sw["output_ports"] = sc.switch_config.output_ports;
  json prios = json::array();
  for (auto p : sc.switch_config.priorities) prios.push_back(priority_symbol(p));
  sw["priorities"] = prios;
  sw["stage_delays"] = {{"ingress_fifo", sc.switch_config.stage_delays.ingress_fifo},
                        {"demux", sc.switch_config.stage_delays.demux},
                        {"queue", sc.switch_config.stage_delays.queue},
                        {"transmit", sc.switch_config.stage_delays.transmit}};
  root["switch"] = sw;
  json sources = json::array();
  for (const auto& s : sc.sources) {
    json emissions = json::array();
    for (const auto& e : s.emissions)
      emissions.push_back({{"port", e.outp},
                           {"prio", priority_symbol(e.prio)},
                           {"count", e.count}});
    sources.push_back({{"period", s.period},
                       {"start_offset", s.start_offset},
                       {"emissions", emissions}});
  }
  root["sources"] = sources;
  json consumers = json::array();
  for (const auto& c : sc.consumers)
    consumers.push_back({{"period", c.period},
                         {"port", c.port},
                         {"fold", c.fold},
                         {"start_offset", c.start_offset}});
  root["consumers"] = consumers;
  return root.dump(2) + "\n";
}

bool is_builtin_scenario(const std::string& name) {
  return name == "sp-base" || name == "sp-congested" || name == "wrr-base" ||
         name == "wrr-congested";
}

Scenario builtin_scenario(const std::string& name) {
  if (name == "sp-base") return base_scenario(SchedulerChoice::static_priority());
  if (name == "sp-congested") return congestion_scenario(SchedulerChoice::static_priority());
  if (name == "wrr-base") return base_scenario(SchedulerChoice::wrr({6, 3, 1}));
  if (name == "wrr-congested") return congestion_scenario(SchedulerChoice::wrr({6, 3, 1}));
  throw std::runtime_error("unknown built-in scenario '" + name + "'");
}

}  // namespace cpnsw
