#include "cpnsw/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cpnsw {

namespace ids {
bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}
}  // namespace ids

const char* priority_symbol(Priority p) {
  switch (p) {
    case Priority::High: return "H";
    case Priority::Mean: return "M";
    case Priority::Low: return "b";
  }
  return "?";
}

Priority priority_from_symbol(const std::string& s) {
  if (s == "H") return Priority::High;
  if (s == "M") return Priority::Mean;
  if (s == "b") return Priority::Low;
  throw std::runtime_error("unknown priority symbol '" + s + "'");
}

std::vector<Priority> default_priorities() {
  return {Priority::High, Priority::Mean, Priority::Low};
}

Colorset packet_colorset() {
  return Colorset::tuple({Colorset::symbol(), Colorset::symbol(),
                          Colorset::symbol(), Colorset::integer()});
}

ColorValue make_packet(const std::string& inp, const std::string& outp,
                       Priority prio, std::int64_t seq) {
  return ColorValue::tuple({ColorValue::symbol(inp), ColorValue::symbol(outp),
                            ColorValue::symbol(priority_symbol(prio)),
                            ColorValue::integer(seq)});
}

std::string delivery_place_name(std::size_t port_index) {
  std::string name = "Ptr2";
  for (std::size_t i = 0; i < port_index; ++i) name += "'";
  return name;
}

std::string availability_place_name(std::size_t port_index) {
  return "Pbp" + std::to_string(port_index + 1);
}

void Scenario::validate() const {
  const auto& ports = switch_config.output_ports;
  const auto& prios = switch_config.priorities;
  if (ports.empty()) throw std::runtime_error("scenario: no output ports");
  if (prios.empty()) throw std::runtime_error("scenario: no priorities");
  if (std::set<std::string>(ports.begin(), ports.end()).size() != ports.size())
    throw std::runtime_error("scenario: duplicate output port");
  if (std::set<Priority>(prios.begin(), prios.end()).size() != prios.size())
    throw std::runtime_error("scenario: duplicate priority");
  if (!std::is_sorted(prios.begin(), prios.end(),
                      [](Priority a, Priority b) { return static_cast<int>(a) < static_cast<int>(b); }))
    throw std::runtime_error("scenario: priorities must be ordered highest first");

  const auto& d = switch_config.stage_delays;
  if (d.ingress_fifo < 0 || d.demux < 0 || d.queue < 0 || d.transmit < 0)
    throw std::runtime_error("scenario: stage delays must be non-negative");

  auto has_port = [&](const std::string& p) {
    return std::find(ports.begin(), ports.end(), p) != ports.end();
  };
  auto has_prio = [&](Priority p) {
    return std::find(prios.begin(), prios.end(), p) != prios.end();
  };

  if (sources.empty()) throw std::runtime_error("scenario: no sources");
  std::set<std::string> consumed_ports;
  for (const auto& c : consumers) {
    if (c.period < 1) throw std::runtime_error("scenario: consumer period must be >= 1");
    if (c.fold < 1) throw std::runtime_error("scenario: consumer fold must be >= 1");
    if (c.start_offset < 0) throw std::runtime_error("scenario: negative consumer offset");
    if (!has_port(c.port)) throw std::runtime_error("scenario: consumer on unknown port '" + c.port + "'");
    if (!consumed_ports.insert(c.port).second)
      throw std::runtime_error("scenario: duplicate consumer for port '" + c.port + "'");
  }
  for (const auto& s : sources) {
    if (s.period < 1) throw std::runtime_error("scenario: source period must be >= 1");
    if (s.start_offset < 0) throw std::runtime_error("scenario: negative source offset");
    if (s.emissions.empty()) throw std::runtime_error("scenario: source with no emissions");
    for (const auto& e : s.emissions) {
      if (e.count < 1) throw std::runtime_error("scenario: emission count must be >= 1");
      if (!has_port(e.outp)) throw std::runtime_error("scenario: emission to unknown port '" + e.outp + "'");
      if (!has_prio(e.prio)) throw std::runtime_error("scenario: emission with unconfigured priority");
      if (!consumed_ports.count(e.outp))
        throw std::runtime_error("scenario: emissions to '" + e.outp + "' have no consumer");
    }
  }
  if (scheduler.policy == SchedulerChoice::Policy::Wrr) {
    if (scheduler.weights.size() != prios.size())
      throw std::runtime_error("scenario: WRR needs one weight per priority");
    for (int w : scheduler.weights)
      if (w < 1) throw std::runtime_error("scenario: WRR weights must be >= 1");
  }
}

Page build_periodic_source(const SourceSpec& spec, std::size_t source_index) {
  Page page;
  page.id = "source";

  Place out{"out", packet_colorset(), true, {}};
  Place timer{"Psrc", Colorset::unit(), true,
              {TimedToken{ColorValue::unit(), spec.start_offset}}};
  // Sequence ids are partitioned per source so records stay unique.
  Place seq{"Pseq", Colorset::integer(), false,
            {TimedToken{ColorValue::integer(static_cast<std::int64_t>(source_index) * 1000000), 0}}};
  page.places = {out, timer, seq};
  page.ports = {"out"};

  Transition emit;
  emit.id = "emit";
  emit.inputs = {InputArc{"Psrc", Pattern::any("u")},
                 InputArc{"Pseq", Pattern::any("n")}};

  std::int64_t total = 0;
  OutputArc packets{"out", {}};
  for (const auto& e : spec.emissions) {
    for (int k = 0; k < e.count; ++k) {
      packets.productions.push_back(Production{
          Expr::mk_tuple({Expr::sym("I1"), Expr::sym(e.outp),
                          Expr::sym(priority_symbol(e.prio)),
                          Expr::add(Expr::var("n"), Expr::num(total))}),
          nullptr, 0});
      ++total;
    }
  }
  emit.outputs.push_back(std::move(packets));
  emit.outputs.push_back(OutputArc{
      "Psrc", {Production{Expr::lit(ColorValue::unit()), nullptr, spec.period}}});
  emit.outputs.push_back(OutputArc{
      "Pseq", {Production{Expr::add(Expr::var("n"), Expr::num(total)), nullptr, 0}}});
  page.transitions.push_back(std::move(emit));
  return page;
}

Page build_shared_fifo(TimeUnit ingress_delay) {
  Page page;
  page.id = "fifo";
  page.places = {
      Place{"in", packet_colorset(), true, {}},
      Place{"PF", Colorset::seq_of(packet_colorset()), false,
            {TimedToken{ColorValue::seq({}), 0}}},
      Place{"out", packet_colorset(), true, {}},
  };
  page.ports = {"in", "out"};

  Transition enq;
  enq.id = "enq";
  enq.inputs = {InputArc{"in", Pattern::any("p")}, InputArc{"PF", Pattern::any("Lw")}};
  enq.outputs = {OutputArc{
      "PF",
      {Production{Expr::concat(Expr::var("Lw"), Expr::mk_seq({Expr::var("p")})), nullptr, 0}}}};
  page.transitions.push_back(std::move(enq));

  Transition deq;
  deq.id = "deq";
  deq.inputs = {InputArc{"PF", Pattern::any("Lw")}};
  deq.guard = Expr::ne(Expr::var("Lw"), Expr::nil());
  deq.outputs = {
      OutputArc{"PF", {Production{Expr::tail(Expr::var("Lw")), nullptr, 0}}},
      OutputArc{"out", {Production{Expr::head(Expr::var("Lw")), nullptr, ingress_delay}}}};
  page.transitions.push_back(std::move(deq));
  return page;
}

Page build_demux(const std::vector<std::string>& ports,
                 const std::vector<Priority>& priorities, TimeUnit demux_delay,
                 TimeUnit queue_delay) {
  Page page;
  page.id = "demux";
  page.places.push_back(Place{"in", packet_colorset(), true, {}});
  page.ports = {"in"};

  // First stage: route on the destination attribute.
  Transition dmulx;
  dmulx.id = "DMULX";
  dmulx.inputs = {InputArc{"in", Pattern::any("p")}};
  for (const auto& port : ports) {
    page.places.push_back(Place{"d_" + port, packet_colorset(), true, {}});
    dmulx.outputs.push_back(OutputArc{
        "d_" + port,
        {Production{Expr::var("p"),
                    Expr::eq(Expr::tuple_get(Expr::var("p"), 1), Expr::sym(port)),
                    demux_delay}}});
  }
  page.transitions.push_back(std::move(dmulx));

  // Second stage, one demultiplexer per output port: route on priority.
  for (std::size_t i = 0; i < ports.size(); ++i) {
    const auto& port = ports[i];
    Transition t;
    t.id = "DMULX" + std::to_string(i + 1);
    t.inputs = {InputArc{"d_" + port, Pattern::any("p")}};
    for (const auto& prio : priorities) {
      std::string out_id = "out_" + port + "_" + priority_symbol(prio);
      page.places.push_back(Place{out_id, packet_colorset(), true, {}});
      page.ports.push_back(out_id);
      t.outputs.push_back(OutputArc{
          out_id,
          {Production{Expr::var("p"),
                      Expr::eq(Expr::tuple_get(Expr::var("p"), 2),
                               Expr::sym(priority_symbol(prio))),
                      queue_delay}}});
    }
    page.transitions.push_back(std::move(t));
  }
  return page;
}

Page build_periodic_consumer(const ConsumerSpec& spec,
                             const std::vector<Priority>& priorities) {
  Page page;
  page.id = "consumer";
  page.places = {
      Place{"in", packet_colorset(), true, {}},
      Place{"bp", Colorset::unit(), true, {}},
      Place{"CQ", Colorset::seq_of(packet_colorset()), false,
            {TimedToken{ColorValue::seq({}), 0}}},
      Place{"Ctick", Colorset::unit(), true,
            {TimedToken{ColorValue::unit(), spec.start_offset}}},
      Place{"C1", Colorset::tuple({Colorset::symbol(), Colorset::integer()}), false, {}},
      Place{"done", packet_colorset(), true, {}},
  };
  page.ports = {"in", "bp"};
  for (const auto& prio : priorities) {
    page.places[4].initial_marking.push_back(TimedToken{
        ColorValue::tuple({ColorValue::symbol(priority_symbol(prio)),
                           ColorValue::integer(0)}),
        0});
  }

  Transition arrive;
  arrive.id = "arrive";
  arrive.inputs = {InputArc{"in", Pattern::any("p")}, InputArc{"CQ", Pattern::any("Lc")}};
  arrive.outputs = {OutputArc{
      "CQ",
      {Production{Expr::concat(Expr::var("Lc"), Expr::mk_seq({Expr::var("p")})), nullptr, 0}}}};
  page.transitions.push_back(std::move(arrive));

  // The periodic tick: takes up to `fold` queued packets, bumps the
  // per-priority counters, releases the line once per consumed packet.
  Transition tick;
  tick.id = "tick";
  tick.inputs = {InputArc{"Ctick", Pattern::any("u")}, InputArc{"CQ", Pattern::any("Lc")}};
  for (const auto& prio : priorities) {
    std::string cvar = std::string("c") + priority_symbol(prio);
    tick.inputs.push_back(InputArc{
        "C1", Pattern::tuple({Pattern::constant(ColorValue::symbol(priority_symbol(prio))),
                              Pattern::any(cvar)})});
  }
  tick.outputs.push_back(OutputArc{
      "Ctick", {Production{Expr::lit(ColorValue::unit()), nullptr, spec.period}}});
  tick.outputs.push_back(OutputArc{
      "CQ", {Production{Expr::drop(Expr::var("Lc"), Expr::num(spec.fold)), nullptr, 0}}});

  auto taken_slot = [&](int j) {  // whether slot j consumes a packet
    return Expr::gt(Expr::len(Expr::var("Lc")), Expr::num(j));
  };
  OutputArc counters{"C1", {}};
  for (const auto& prio : priorities) {
    std::string cvar = std::string("c") + priority_symbol(prio);
    // c + sum over slots j of [slot j holds a packet of this priority]
    ExprPtr total = Expr::var(cvar);
    for (int j = 0; j < spec.fold; ++j) {
      ExprPtr slot_matches = Expr::if_else(
          taken_slot(j),
          Expr::if_else(Expr::eq(Expr::tuple_get(Expr::nth(Expr::var("Lc"), Expr::num(j)), 2),
                                 Expr::sym(priority_symbol(prio))),
                        Expr::num(1), Expr::num(0)),
          Expr::num(0));
      total = Expr::add(total, slot_matches);
    }
    counters.productions.push_back(Production{
        Expr::mk_tuple({Expr::sym(priority_symbol(prio)), total}), nullptr, 0});
  }
  tick.outputs.push_back(std::move(counters));

  OutputArc done{"done", {}};
  OutputArc bp{"bp", {}};
  for (int j = 0; j < spec.fold; ++j) {
    done.productions.push_back(
        Production{Expr::nth(Expr::var("Lc"), Expr::num(j)), taken_slot(j), 0});
    bp.productions.push_back(
        Production{Expr::lit(ColorValue::unit()), taken_slot(j), 0});
  }
  tick.outputs.push_back(std::move(done));
  tick.outputs.push_back(std::move(bp));
  page.transitions.push_back(std::move(tick));
  return page;
}

namespace {

Page build_switch_page(const Scenario& sc) {
  const auto& cfg = sc.switch_config;
  Page page;
  page.id = "switch";

  page.places.push_back(Place{"in", packet_colorset(), true, {}});
  page.ports.push_back("in");
  page.places.push_back(Place{"fout", packet_colorset(), true, {}});
  for (std::size_t i = 0; i < cfg.output_ports.size(); ++i) {
    page.places.push_back(Place{"out" + std::to_string(i + 1), packet_colorset(), true, {}});
    page.places.push_back(Place{"bp" + std::to_string(i + 1), Colorset::unit(), true, {}});
    page.ports.push_back("out" + std::to_string(i + 1));
    page.ports.push_back("bp" + std::to_string(i + 1));
    for (const auto& prio : cfg.priorities) {
      page.places.push_back(Place{
          "qin_" + cfg.output_ports[i] + "_" + priority_symbol(prio),
          packet_colorset(), true, {}});
    }
  }

  auto fifo = std::make_shared<Page>(build_shared_fifo(cfg.stage_delays.ingress_fifo));
  page.subs.push_back(SubTransition{"fifo", fifo, {{"in", "in"}, {"out", "fout"}}});

  auto demux = std::make_shared<Page>(
      build_demux(cfg.output_ports, cfg.priorities, cfg.stage_delays.demux,
                  cfg.stage_delays.queue));
  SubTransition dsub{"demux", demux, {{"in", "fout"}}};
  for (const auto& port : cfg.output_ports)
    for (const auto& prio : cfg.priorities) {
      std::string key = "out_" + port + "_" + priority_symbol(prio);
      dsub.port_to_socket[key] = "qin_" + port + "_" + priority_symbol(prio);
    }
  page.subs.push_back(std::move(dsub));

  for (std::size_t i = 0; i < cfg.output_ports.size(); ++i) {
    const auto& port = cfg.output_ports[i];
    PagePtr sched;
    if (sc.scheduler.policy == SchedulerChoice::Policy::Wrr) {
      sched = std::make_shared<Page>(
          build_wrr_page(cfg.priorities, sc.scheduler.weights, cfg.stage_delays.transmit));
    } else {
      sched = std::make_shared<Page>(
          build_static_priority_page(cfg.priorities, cfg.stage_delays.transmit));
    }
    SubTransition ssub{"sched_" + port, sched, {}};
    for (const auto& prio : cfg.priorities) {
      ssub.port_to_socket[std::string("in_") + priority_symbol(prio)] =
          "qin_" + port + "_" + priority_symbol(prio);
    }
    ssub.port_to_socket["bp"] = "bp" + std::to_string(i + 1);
    ssub.port_to_socket["out"] = "out" + std::to_string(i + 1);
    page.subs.push_back(std::move(ssub));
  }
  return page;
}

Page build_consumers_page(const Scenario& sc) {
  Page page;
  page.id = "consumers";
  const auto& ports = sc.switch_config.output_ports;
  for (std::size_t i = 0; i < ports.size(); ++i) {
    page.places.push_back(Place{"in" + std::to_string(i + 1), packet_colorset(), true, {}});
    page.places.push_back(Place{"bp" + std::to_string(i + 1), Colorset::unit(), true, {}});
    page.ports.push_back("in" + std::to_string(i + 1));
    page.ports.push_back("bp" + std::to_string(i + 1));
  }
  for (const auto& c : sc.consumers) {
    auto it = std::find(ports.begin(), ports.end(), c.port);
    std::size_t i = static_cast<std::size_t>(it - ports.begin());
    auto sub = std::make_shared<Page>(
        build_periodic_consumer(c, sc.switch_config.priorities));
    page.subs.push_back(SubTransition{
        "cons_" + c.port, sub,
        {{"in", "in" + std::to_string(i + 1)}, {"bp", "bp" + std::to_string(i + 1)}}});
  }
  return page;
}

}  // namespace

Page assemble_switch(const Scenario& sc) {
  sc.validate();
  const auto& cfg = sc.switch_config;

  Page root;
  root.id = "root";
  root.places.push_back(Place{"Ptr1", packet_colorset(), true, {}});

  // The output lines first become available one t.u after a packet emitted
  // at t=0 can settle into its queue, so the start-up transient cannot let
  // a lower class grab the line while an equal-clock higher-class arrival
  // is still mid-enqueue.
  TimeUnit line_ready = cfg.stage_delays.ingress_fifo + cfg.stage_delays.demux +
                        cfg.stage_delays.queue + 1;

  for (std::size_t i = 0; i < cfg.output_ports.size(); ++i) {
    root.places.push_back(Place{delivery_place_name(i), packet_colorset(), true, {}});
    root.places.push_back(Place{availability_place_name(i), Colorset::unit(), true,
                                {TimedToken{ColorValue::unit(), line_ready}}});
  }

  for (std::size_t s = 0; s < sc.sources.size(); ++s) {
    auto src = std::make_shared<Page>(build_periodic_source(sc.sources[s], s));
    std::string id = sc.sources.size() == 1 ? "traffic_source"
                                            : "traffic_source" + std::to_string(s + 1);
    root.subs.push_back(SubTransition{id, src, {{"out", "Ptr1"}}});
  }

  auto sw = std::make_shared<Page>(build_switch_page(sc));
  SubTransition swsub{"switch", sw, {{"in", "Ptr1"}}};
  for (std::size_t i = 0; i < cfg.output_ports.size(); ++i) {
    swsub.port_to_socket["out" + std::to_string(i + 1)] = delivery_place_name(i);
    swsub.port_to_socket["bp" + std::to_string(i + 1)] = availability_place_name(i);
  }
  root.subs.push_back(std::move(swsub));

  auto cons = std::make_shared<Page>(build_consumers_page(sc));
  SubTransition csub{"consumers", cons, {}};
  for (std::size_t i = 0; i < cfg.output_ports.size(); ++i) {
    csub.port_to_socket["in" + std::to_string(i + 1)] = delivery_place_name(i);
    csub.port_to_socket["bp" + std::to_string(i + 1)] = availability_place_name(i);
  }
  root.subs.push_back(std::move(csub));
  return root;
}

namespace {

Scenario experiment_scenario(SchedulerChoice scheduler, int packets_per_pair) {
  Scenario sc;
  sc.scheduler = std::move(scheduler);
  SourceSpec src;
  src.period = 5;
  for (const auto& port : sc.switch_config.output_ports)
    for (const auto& prio : sc.switch_config.priorities)
      src.emissions.push_back(Emission{port, prio, packets_per_pair});
  sc.sources = {src};
  for (const auto& port : sc.switch_config.output_ports)
    sc.consumers.push_back(ConsumerSpec{5, port, 3, 0});
  sc.stop = StopCondition{10000, 565};
  sc.seed = 1;
  return sc;
}

}  // namespace

Scenario base_scenario(SchedulerChoice scheduler) {
  return experiment_scenario(std::move(scheduler), 1);
}

Scenario congestion_scenario(SchedulerChoice scheduler) {
  // Two extra packets per source per period on top of the base mix.
  return experiment_scenario(std::move(scheduler), 3);
}

}  // namespace cpnsw
