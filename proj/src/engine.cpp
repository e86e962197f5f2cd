#include "cpnsw/engine.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cpnsw {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::logic_error("Rng::below(0)");
  if (n == 1) return 0;
  // Rejection sampling over the largest multiple of n below 2^64.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % n;
}

std::string Trace::to_text() const {
  std::ostringstream out;
  auto tokens = [&](const std::vector<std::pair<std::string, TimedToken>>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) s += "|";
      s += xs[i].first + ":" + xs[i].second.to_string();
    }
    return s;
  };
  for (const auto& e : events) {
    out << e.step << ", " << e.clock << ", " << e.transition << ", ";
    bool first = true;
    for (const auto& [k, v] : e.binding) {
      if (!first) out << ";";
      out << k << "=" << v.to_string();
      first = false;
    }
    out << ", " << tokens(e.consumed) << ", " << tokens(e.produced) << "\n";
  }
  return out.str();
}

Marking initial_marking(const Net& net) {
  Marking m;
  for (const auto& p : net.places) {
    TokenBag& bag = m[p.id];
    for (const auto& tok : p.initial_marking) bag.add(tok);
  }
  return m;
}

Engine::Engine(std::shared_ptr<const Net> net, std::uint64_t seed)
    : net_(std::move(net)), rng_(seed) {
  net_->validate();
  marking_ = initial_marking(*net_);
}

namespace {

// Counts of identical tokens already claimed by earlier arcs, so one token
// is never matched twice within a single option.
using Claims = std::map<std::string, std::map<TimedToken, std::size_t>>;

std::size_t count_in_bag(const TokenBag& bag, const TimedToken& t) {
  const auto& xs = bag.tokens();
  auto lo = std::lower_bound(xs.begin(), xs.end(), t);
  std::size_t n = 0;
  for (auto it = lo; it != xs.end() && *it == t; ++it) ++n;
  return n;
}

}  // namespace

std::vector<EnabledBinding> Engine::enabled_bindings(const Transition& t,
                                                     TimeUnit at_clock) const {
  std::vector<EnabledBinding> result;
  // Depth-first over arcs; at each arc, candidate tokens are the distinct
  // available tokens of the place with unclaimed multiplicity left.
  struct Frame {
    Binding binding;
    std::vector<std::pair<std::string, TimedToken>> consumed;
    Claims claims;
  };
  std::vector<Frame> frontier{Frame{}};
  for (const auto& arc : t.inputs) {
    auto it = marking_.find(arc.place);
    const TokenBag* bag = it == marking_.end() ? nullptr : &it->second;
    bool timed = net_->place(arc.place).timed;
    std::vector<Frame> next;
    if (bag == nullptr || bag->empty()) return {};
    for (auto& frame : frontier) {
      const auto& xs = bag->tokens();
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0 && xs[i] == xs[i - 1]) continue;  // identical tokens are interchangeable
        const TimedToken& tok = xs[i];
        if (timed && tok.timestamp > at_clock) continue;
        std::size_t avail = count_in_bag(*bag, tok);
        std::size_t claimed = 0;
        auto ci = frame.claims.find(arc.place);
        if (ci != frame.claims.end()) {
          auto ti = ci->second.find(tok);
          if (ti != ci->second.end()) claimed = ti->second;
        }
        if (claimed >= avail) continue;
        Binding binding = frame.binding;
        if (!arc.pattern.match(tok.value, binding)) continue;
        Frame child{std::move(binding), frame.consumed, frame.claims};
        child.consumed.emplace_back(arc.place, tok);
        child.claims[arc.place][tok]++;
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) return {};
  }
  for (auto& frame : frontier) {
    if (t.guard && !t.guard->eval_bool(frame.binding)) continue;
    result.push_back(EnabledBinding{std::move(frame.binding), std::move(frame.consumed)});
  }
  return result;
}

void Engine::fire(const Transition& t, const EnabledBinding& option) {
  // Firing a non-enabled option is a hard error: the consumed tokens must
  // cover the input arcs in order, be available, match their patterns
  // under the option's binding, and satisfy the guard.
  if (option.consumed.size() != t.inputs.size())
    throw std::runtime_error("fire: '" + t.id + "' option does not cover the input arcs");
  Claims claimed;
  for (std::size_t i = 0; i < t.inputs.size(); ++i) {
    const auto& [place, tok] = option.consumed[i];
    if (place != t.inputs[i].place)
      throw std::runtime_error("fire: '" + t.id + "' consumed token targets wrong place");
    Binding check = option.binding;
    if (!t.inputs[i].pattern.match(tok.value, check) || check != option.binding)
      throw std::runtime_error("fire: '" + t.id + "' binding does not match arc pattern");
    if (net_->place(place).timed && tok.timestamp > clock_)
      throw std::runtime_error("fire: token not yet available: " + tok.to_string());
    auto it = marking_.find(place);
    std::size_t avail = it == marking_.end() ? 0 : count_in_bag(it->second, tok);
    std::size_t& c = claimed[place][tok];
    if (++c > avail)
      throw std::runtime_error("fire: '" + t.id + "' consumed token missing from '" +
                               place + "': " + tok.to_string());
  }
  if (t.guard && !t.guard->eval_bool(option.binding))
    throw std::runtime_error("fire: guard false for '" + t.id + "'");

  TraceEvent ev;
  ev.step = step_count_;
  ev.clock = clock_;
  ev.transition = t.id;
  ev.binding = option.binding;
  ev.consumed = option.consumed;

  // Evaluate every production before touching the marking, so a hard
  // error leaves the engine state unchanged.
  for (const auto& arc : t.outputs) {
    const Place& place = net_->place(arc.place);
    for (auto& tok : evaluate_arc(arc, option.binding, clock_)) {
      tok.timestamp += t.firing_delay;
      if (!place.colorset.matches(tok.value))
        throw std::runtime_error("fire: token " + tok.value.to_string() +
                                 " violates colorset of '" + place.id + "'");
      ev.produced.emplace_back(arc.place, tok);
    }
  }

  for (const auto& [place, tok] : ev.consumed) marking_[place].remove(tok);
  for (const auto& [place, tok] : ev.produced) marking_[place].add(tok);
  trace_.events.push_back(std::move(ev));
  ++step_count_;
  trace_.final_clock = clock_;
}

std::vector<Engine::Option> Engine::all_enabled(TimeUnit at_clock) const {
  std::vector<Option> options;
  for (const auto& t : net_->transitions) {
    for (auto& eb : enabled_bindings(t, at_clock))
      options.push_back(Option{&t, std::move(eb)});
  }
  return options;
}

StepResult Engine::step() {
  auto options = all_enabled(clock_);
  if (!options.empty()) {
    const auto& pick = options[rng_.below(options.size())];
    fire(*pick.transition, pick.enabled);
    return {StepKind::Fired, clock_};
  }
  // Earliest future instant at which some binding becomes enabled. Token
  // availability is monotone in the clock, so scanning candidate
  // timestamps in ascending order finds it.
  std::set<TimeUnit> candidates;
  for (const auto& p : net_->places) {
    if (!p.timed) continue;
    auto it = marking_.find(p.id);
    if (it == marking_.end()) continue;
    for (const auto& tok : it->second.tokens())
      if (tok.timestamp > clock_) candidates.insert(tok.timestamp);
  }
  for (TimeUnit t : candidates) {
    if (!all_enabled(t).empty()) {
      clock_ = t;
      trace_.final_clock = clock_;
      return {StepKind::ClockAdvanced, clock_};
    }
  }
  return {StepKind::Dead, clock_};
}

void Engine::run(std::uint64_t max_steps, TimeUnit max_time) {
  while (step_count_ < max_steps) {
    StepResult r = step();
    if (r.kind == StepKind::Dead) break;
    if (clock_ > max_time) break;
  }
}

Trace run(std::shared_ptr<const Net> net, std::uint64_t max_steps, TimeUnit max_time,
          std::uint64_t seed, Marking* final_marking) {
  Engine engine(std::move(net), seed);
  engine.run(max_steps, max_time);
  if (final_marking) *final_marking = engine.marking();
  return engine.trace();
}

Marking replay_trace(const Net& net, const Trace& trace) {
  Marking m = initial_marking(net);
  TimeUnit clock = 0;
  for (const auto& e : trace.events) {
    if (e.clock < clock)
      throw std::runtime_error("replay: clock decreased at step " + std::to_string(e.step));
    clock = e.clock;
    for (const auto& [place, tok] : e.consumed) {
      if (net.place(place).timed && tok.timestamp > clock)
        throw std::runtime_error("replay: consumed unavailable token at step " +
                                 std::to_string(e.step));
      m[place].remove(tok);  // throws if absent: conservation violation
    }
    for (const auto& [place, tok] : e.produced) {
      if (tok.timestamp < clock)
        throw std::runtime_error("replay: produced token timestamped in the past at step " +
                                 std::to_string(e.step));
      m[place].add(tok);
    }
  }
  return m;
}

}  // namespace cpnsw
