#ifndef CPNSW_TESTS_HELPERS_HPP
#define CPNSW_TESTS_HELPERS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cpnsw/engine.hpp"
#include "cpnsw/model.hpp"
#include "cpnsw/sched.hpp"

namespace cpnsw::testing {

// ---------------------------------------------------------------------------
// Independent brute-force binding enumerator: tries every assignment of
// token instances to input arcs, with no instance used twice, then filters
// by pattern match and guard. Used to cross-check Engine::enabled_bindings.
// ---------------------------------------------------------------------------

inline std::string option_key(const Binding& binding,
                              std::vector<std::pair<std::string, TimedToken>> consumed) {
  std::sort(consumed.begin(), consumed.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first < b.first;
              return a.second < b.second;
            });
  std::ostringstream out;
  for (const auto& [k, v] : binding) out << k << "=" << v.to_string() << ";";
  out << "|";
  for (const auto& [p, t] : consumed) out << p << ":" << t.to_string() << ";";
  return out.str();
}

inline std::set<std::string> brute_force_options(const Net& net, const Marking& marking,
                                                 const Transition& t, TimeUnit clock) {
  std::set<std::string> options;
  struct State {
    Binding binding;
    std::vector<std::pair<std::string, TimedToken>> consumed;
    std::map<std::string, std::set<std::size_t>> used;  // token indices per place
  };
  std::function<void(std::size_t, State)> go = [&](std::size_t arc_idx, State st) {
    if (arc_idx == t.inputs.size()) {
      if (t.guard && !t.guard->eval_bool(st.binding)) return;
      options.insert(option_key(st.binding, st.consumed));
      return;
    }
    const auto& arc = t.inputs[arc_idx];
    auto it = marking.find(arc.place);
    if (it == marking.end()) return;
    const auto& tokens = it->second.tokens();
    bool timed = net.place(arc.place).timed;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (st.used[arc.place].count(i)) continue;
      if (timed && tokens[i].timestamp > clock) continue;
      State next = st;
      if (!arc.pattern.match(tokens[i].value, next.binding)) continue;
      next.consumed.emplace_back(arc.place, tokens[i]);
      next.used[arc.place].insert(i);
      go(arc_idx + 1, std::move(next));
    }
  };
  go(0, State{});
  return options;
}

inline std::set<std::string> engine_options(const Engine& engine, const Transition& t) {
  std::set<std::string> out;
  for (const auto& eb : engine.enabled_bindings(t, engine.clock()))
    out.insert(option_key(eb.binding, eb.consumed));
  return out;
}

// ---------------------------------------------------------------------------
// Five hand-built hierarchical nets paired with manually flattened
// equivalents (same flattened ids), for flatten-soundness checks.
// ---------------------------------------------------------------------------

struct HierarchyPair {
  std::string name;
  Page hierarchical;
  Page flat;  // no subs; place/transition ids equal the flattened form
};

std::vector<HierarchyPair> five_hierarchy_pairs();

// ---------------------------------------------------------------------------
// Scheduler differential harness: a net holding just the scheduler page,
// pre-loaded arrivals (timed tokens in the queue-input places) and an
// instant consumer that frees the line at delivery.
// ---------------------------------------------------------------------------

struct SchedPattern {
  std::vector<OracleArrival> arrivals;  // time-sorted
  SchedulerChoice policy;
  TimeUnit transmit_delay = 4;
};

Page build_sched_harness(const SchedPattern& pattern);

/// Runs the harness and returns the served packets in service order
/// (per serve firing: seq id and start clock).
std::vector<OracleService> run_sched_harness(const SchedPattern& pattern, std::uint64_t seed);

/// Deterministic random pattern whose arrival times never collide with the
/// oracle's service instants (so CPN interleaving ties cannot change the
/// outcome). `mismatch` reports a human-readable diff on failure.
SchedPattern make_sched_pattern(std::uint64_t seed, bool wrr);
bool sched_matches_oracle(const SchedPattern& pattern, std::uint64_t engine_seed,
                          std::string* mismatch);

}  // namespace cpnsw::testing

#endif
