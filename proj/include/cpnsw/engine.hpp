#ifndef CPNSW_ENGINE_HPP
#define CPNSW_ENGINE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cpnsw/net.hpp"

namespace cpnsw {

/// Seeded tie-breaker. Bounded draws use rejection sampling on top of
/// mt19937_64 so results are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 gen_;
};

using Marking = std::map<std::string, TokenBag>;

struct TraceEvent {
  std::uint64_t step = 0;
  TimeUnit clock = 0;
  std::string transition;
  Binding binding;
  std::vector<std::pair<std::string, TimedToken>> consumed;  // (place, token)
  std::vector<std::pair<std::string, TimedToken>> produced;
};

struct Trace {
  std::vector<TraceEvent> events;
  TimeUnit final_clock = 0;

  std::string to_text() const;
};

/// One enabled firing option.
struct EnabledBinding {
  Binding binding;
  std::vector<std::pair<std::string, TimedToken>> consumed;  // arc order
};

enum class StepKind { Fired, ClockAdvanced, Dead };

struct StepResult {
  StepKind kind;
  TimeUnit clock = 0;  // clock after the step
};

/// Sequential timed-CPN executor with interleaving semantics: one
/// transition firing per step, conflicts resolved uniformly at random
/// from the seeded generator.
class Engine {
 public:
  Engine(std::shared_ptr<const Net> net, std::uint64_t seed);

  const Net& net() const { return *net_; }
  const Marking& marking() const { return marking_; }
  TimeUnit clock() const { return clock_; }
  std::uint64_t step_count() const { return step_count_; }
  const Trace& trace() const { return trace_; }

  /// All bindings enabled for `t` at the given clock, in canonical order.
  std::vector<EnabledBinding> enabled_bindings(const Transition& t,
                                               TimeUnit at_clock) const;

  /// Fires a specific option; throws if it is not currently enabled.
  void fire(const Transition& t, const EnabledBinding& option);

  StepResult step();

  /// Runs until a dead marking, `max_steps` firings, or clock > `max_time`.
  void run(std::uint64_t max_steps, TimeUnit max_time);

 private:
  struct Option {
    const Transition* transition;
    EnabledBinding enabled;
  };
  std::vector<Option> all_enabled(TimeUnit at_clock) const;

  std::shared_ptr<const Net> net_;
  Marking marking_;
  TimeUnit clock_ = 0;
  Rng rng_;
  std::uint64_t step_count_ = 0;
  Trace trace_;
};

/// Convenience: flatten-validated net, fresh engine, full run.
Trace run(std::shared_ptr<const Net> net, std::uint64_t max_steps, TimeUnit max_time,
          std::uint64_t seed, Marking* final_marking = nullptr);

/// Replays a trace from the net's initial marking, checking that every
/// consumed token was present and available at the event's clock and that
/// clocks never decrease. Returns the final marking. Throws on violation.
Marking replay_trace(const Net& net, const Trace& trace);

Marking initial_marking(const Net& net);

}  // namespace cpnsw

#endif
