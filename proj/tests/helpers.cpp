#include "helpers.hpp"

#include <random>
#include <stdexcept>

namespace cpnsw::testing {

namespace {

Place int_place(std::string id, std::vector<std::pair<std::int64_t, TimeUnit>> init = {}) {
  Place p{std::move(id), Colorset::integer(), true, {}};
  for (auto [v, ts] : init) p.initial_marking.push_back({ColorValue::integer(v), ts});
  return p;
}

Transition simple_int_step(std::string id, std::string from, std::string to,
                           std::int64_t delta, TimeUnit delay) {
  Transition t;
  t.id = std::move(id);
  t.inputs = {InputArc{std::move(from), Pattern::any("n")}};
  t.outputs = {OutputArc{
      std::move(to),
      {Production{Expr::add(Expr::var("n"), Expr::num(delta)), nullptr, delay}}}};
  return t;
}

}  // namespace

std::vector<HierarchyPair> five_hierarchy_pairs() {
  std::vector<HierarchyPair> pairs;

  {  // 1. simple relay through one sub-page
    auto mid = std::make_shared<Page>();
    mid->id = "midp";
    mid->places = {int_place("in"), int_place("B"), int_place("out")};
    mid->ports = {"in", "out"};
    mid->transitions = {simple_int_step("f", "in", "B", 1, 2),
                        simple_int_step("g", "B", "out", 10, 1)};

    Page h;
    h.id = "root";
    h.places = {int_place("A", {{1, 0}}), int_place("C")};
    h.subs = {SubTransition{"mid", mid, {{"in", "A"}, {"out", "C"}}}};

    Page f;
    f.id = "root";
    f.places = {int_place("A", {{1, 0}}), int_place("C"), int_place("mid/B")};
    f.transitions = {simple_int_step("mid/f", "A", "mid/B", 1, 2),
                     simple_int_step("mid/g", "mid/B", "C", 10, 1)};
    pairs.push_back({"relay", h, f});
  }

  {  // 2. two instances of one worker competing for a shared token
    auto worker = std::make_shared<Page>();
    worker->id = "worker";
    worker->places = {Place{"s", Colorset::unit(), true, {{ColorValue::unit(), 0}}},
                      int_place("r")};
    worker->ports = {"s", "r"};
    Transition w;
    w.id = "w";
    w.inputs = {InputArc{"s", Pattern::any("u")}};
    w.outputs = {OutputArc{"r", {Production{Expr::num(7), nullptr, 1}}}};
    worker->transitions = {w};

    // Shared socket holds one token total; both workers also inject one
    // token each through the fused port marking.
    Page h;
    h.id = "root";
    h.places = {Place{"S", Colorset::unit(), true, {{ColorValue::unit(), 0}}},
                int_place("R1"), int_place("R2")};
    h.subs = {SubTransition{"p1", worker, {{"s", "S"}, {"r", "R1"}}},
              SubTransition{"p2", worker, {{"s", "S"}, {"r", "R2"}}}};

    Page f;
    f.id = "root";
    f.places = {Place{"S", Colorset::unit(), true,
                      {{ColorValue::unit(), 0}, {ColorValue::unit(), 0}, {ColorValue::unit(), 0}}},
                int_place("R1"), int_place("R2")};
    Transition w1 = w, w2 = w;
    w1.id = "p1/w";
    w1.inputs[0].place = "S";
    w1.outputs[0].place = "R1";
    w2.id = "p2/w";
    w2.inputs[0].place = "S";
    w2.outputs[0].place = "R2";
    f.transitions = {w1, w2};
    pairs.push_back({"shared", h, f});
  }

  {  // 3. two-level nesting with a pure wrapper page
    auto inner = std::make_shared<Page>();
    inner->id = "p2";
    inner->places = {int_place("in"), int_place("mid"), int_place("out")};
    inner->ports = {"in", "out"};
    inner->transitions = {simple_int_step("h1", "in", "mid", -1, 1),
                          simple_int_step("h2", "mid", "out", -1, 1)};

    auto wrapper = std::make_shared<Page>();
    wrapper->id = "p1";
    wrapper->places = {int_place("in"), int_place("out")};
    wrapper->ports = {"in", "out"};
    wrapper->subs = {SubTransition{"b", inner, {{"in", "in"}, {"out", "out"}}}};

    Page h;
    h.id = "root";
    h.places = {int_place("X", {{3, 0}}), int_place("Z")};
    h.subs = {SubTransition{"a", wrapper, {{"in", "X"}, {"out", "Z"}}}};

    Page f;
    f.id = "root";
    f.places = {int_place("X", {{3, 0}}), int_place("Z"), int_place("a/b/mid")};
    f.transitions = {simple_int_step("a/b/h1", "X", "a/b/mid", -1, 1),
                     simple_int_step("a/b/h2", "a/b/mid", "Z", -1, 1)};
    pairs.push_back({"nested", h, f});
  }

  {  // 4. guards, tuple patterns, conditional production, timed marking
    Colorset pair_cs = Colorset::tuple({Colorset::symbol(), Colorset::integer()});
    auto mk = [&](std::string id, std::vector<TimedToken> init) {
      return Place{std::move(id), pair_cs, true, std::move(init)};
    };
    ColorValue start = ColorValue::tuple({ColorValue::symbol("go"), ColorValue::integer(2)});

    auto sub = std::make_shared<Page>();
    sub->id = "m";
    sub->places = {mk("in", {}), mk("out", {})};
    sub->ports = {"in", "out"};
    Transition k;
    k.id = "k";
    k.inputs = {InputArc{"in", Pattern::tuple({Pattern::any("s"), Pattern::any("n")})}};
    k.guard = Expr::ge(Expr::var("n"), Expr::num(1));
    k.outputs = {
        OutputArc{"in",
                  {Production{Expr::mk_tuple({Expr::var("s"),
                                              Expr::sub(Expr::var("n"), Expr::num(1))}),
                              Expr::ge(Expr::var("n"), Expr::num(2)), 2}}},
        OutputArc{"out",
                  {Production{Expr::mk_tuple({Expr::var("s"), Expr::var("n")}), nullptr, 3}}}};
    sub->transitions = {k};

    Page h;
    h.id = "root";
    h.places = {mk("T1", {{start, 4}}), mk("T2", {})};
    h.subs = {SubTransition{"m", sub, {{"in", "T1"}, {"out", "T2"}}}};

    Page f;
    f.id = "root";
    f.places = {mk("T1", {{start, 4}}), mk("T2", {})};
    Transition fk = k;
    fk.id = "m/k";
    fk.inputs[0].place = "T1";
    fk.outputs[0].place = "T1";
    fk.outputs[1].place = "T2";
    f.transitions = {fk};
    pairs.push_back({"timed-guard", h, f});
  }

  {  // 5. the same sub-page instantiated twice
    auto inc = std::make_shared<Page>();
    inc->id = "inc";
    inc->places = {int_place("in"), int_place("out")};
    inc->ports = {"in", "out"};
    inc->transitions = {simple_int_step("i", "in", "out", 1, 1)};

    Page h;
    h.id = "root";
    h.places = {int_place("U1", {{5, 0}}), int_place("V1"), int_place("U2", {{9, 1}}),
                int_place("V2")};
    h.subs = {SubTransition{"s1", inc, {{"in", "U1"}, {"out", "V1"}}},
              SubTransition{"s2", inc, {{"in", "U2"}, {"out", "V2"}}}};

    Page f;
    f.id = "root";
    f.places = {int_place("U1", {{5, 0}}), int_place("V1"), int_place("U2", {{9, 1}}),
                int_place("V2")};
    f.transitions = {simple_int_step("s1/i", "U1", "V1", 1, 1),
                     simple_int_step("s2/i", "U2", "V2", 1, 1)};
    pairs.push_back({"twice", h, f});
  }

  return pairs;
}

Page build_sched_harness(const SchedPattern& pattern) {
  const auto prios = default_priorities();
  std::vector<std::string> ports;
  for (const auto& a : pattern.arrivals)
    if (std::find(ports.begin(), ports.end(), a.outp) == ports.end())
      ports.push_back(a.outp);
  std::sort(ports.begin(), ports.end());

  Page root;
  root.id = "sh";
  for (const auto& port : ports) {
    for (const auto& prio : prios) {
      Place qin{"qin_" + port + "_" + priority_symbol(prio), packet_colorset(), true, {}};
      for (const auto& a : pattern.arrivals) {
        if (a.outp == port && a.prio == prio)
          qin.initial_marking.push_back(
              {make_packet("I1", a.outp, a.prio, a.seq), a.time});
      }
      root.places.push_back(std::move(qin));
    }
    root.places.push_back(Place{"Pbp_" + port, Colorset::unit(), true,
                                {{ColorValue::unit(), 0}}});
    root.places.push_back(Place{"out_" + port, packet_colorset(), true, {}});

    PagePtr sched;
    if (pattern.policy.policy == SchedulerChoice::Policy::Wrr)
      sched = std::make_shared<Page>(
          build_wrr_page(prios, pattern.policy.weights, pattern.transmit_delay));
    else
      sched = std::make_shared<Page>(
          build_static_priority_page(prios, pattern.transmit_delay));
    SubTransition sub{"sched_" + port, sched, {}};
    for (const auto& prio : prios)
      sub.port_to_socket[std::string("in_") + priority_symbol(prio)] =
          "qin_" + port + "_" + priority_symbol(prio);
    sub.port_to_socket["bp"] = "Pbp_" + port;
    sub.port_to_socket["out"] = "out_" + port;
    root.subs.push_back(std::move(sub));

    // Instant consumer: the line is free again as soon as a packet lands.
    Transition release;
    release.id = "release_" + port;
    release.inputs = {InputArc{"out_" + port, Pattern::any("p")}};
    release.outputs = {OutputArc{"Pbp_" + port, {Production{Expr::lit(ColorValue::unit()), nullptr, 0}}}};
    root.transitions.push_back(std::move(release));
  }
  return root;
}

std::vector<OracleService> run_sched_harness(const SchedPattern& pattern,
                                             std::uint64_t seed) {
  auto net = std::make_shared<Net>(flatten(build_sched_harness(pattern)));
  Engine engine(net, seed);
  engine.run(1000000, 1000000);

  std::vector<OracleService> services;
  for (const auto& e : engine.trace().events) {
    if (e.transition.find(ids::kServeInfix) == std::string::npos) continue;
    for (const auto& [place, tok] : e.produced) {
      if (place.rfind("out_", 0) != 0) continue;
      OracleService sv;
      sv.packet.outp = tok.value.items()[1].sym();
      sv.packet.prio = priority_from_symbol(tok.value.items()[2].sym());
      sv.packet.seq = tok.value.items()[3].int_value();
      sv.start = e.clock;
      sv.finish = tok.timestamp;
      services.push_back(sv);
    }
  }
  std::stable_sort(services.begin(), services.end(),
                   [](const OracleService& a, const OracleService& b) {
                     if (a.start != b.start) return a.start < b.start;
                     return a.packet.outp < b.packet.outp;
                   });
  return services;
}

SchedPattern make_sched_pattern(std::uint64_t seed, bool wrr) {
  std::mt19937_64 gen(seed);
  auto below = [&](std::uint64_t n) { return gen() % n; };

  SchedPattern pattern;
  pattern.transmit_delay = 2 + static_cast<TimeUnit>(below(4));  // 2..5
  if (wrr) {
    static const std::vector<std::vector<int>> kWeights = {
        {6, 3, 1}, {3, 2, 1}, {2, 1, 1}, {1, 1, 1}, {4, 2, 2}};
    pattern.policy = SchedulerChoice::wrr(kWeights[below(kWeights.size())]);
  } else {
    pattern.policy = SchedulerChoice::static_priority();
  }

  std::size_t count = 1 + below(30);
  std::size_t nports = 1 + below(2);
  const auto prios = default_priorities();
  std::set<std::pair<std::string, TimeUnit>> taken;
  for (std::size_t i = 0; i < count; ++i) {
    OracleArrival a;
    a.outp = nports == 1 ? "O1" : (below(2) ? "O2" : "O1");
    a.prio = prios[below(prios.size())];
    a.seq = static_cast<std::int64_t>(i);
    a.time = static_cast<TimeUnit>(below(120));
    while (taken.count({a.outp, a.time})) ++a.time;  // distinct per port
    taken.insert({a.outp, a.time});
    pattern.arrivals.push_back(a);
  }
  std::sort(pattern.arrivals.begin(), pattern.arrivals.end(),
            [](const OracleArrival& a, const OracleArrival& b) {
              if (a.time != b.time) return a.time < b.time;
              return a.seq < b.seq;
            });

  // Nudge arrivals off the oracle's line-release instants: an arrival at
  // the clock where the line frees races the pending service in the net,
  // so the generated patterns avoid exactly those ties. (An arrival that
  // starts its own service is causally ordered and harmless.)
  for (int iter = 0; iter < 400; ++iter) {
    auto services = oracle_schedule(pattern.arrivals, pattern.policy,
                                    pattern.transmit_delay, 0);
    std::map<std::string, std::set<TimeUnit>> busy;
    for (const auto& sv : services) {
      busy[sv.packet.outp].insert(sv.finish);
    }
    bool clean = true;
    std::set<std::pair<std::string, TimeUnit>> used;
    for (auto& a : pattern.arrivals)
      used.insert({a.outp, a.time});
    for (auto& a : pattern.arrivals) {
      if (busy[a.outp].count(a.time)) {
        used.erase({a.outp, a.time});
        do {
          ++a.time;
        } while (busy[a.outp].count(a.time) || used.count({a.outp, a.time}));
        used.insert({a.outp, a.time});
        clean = false;
      }
    }
    if (clean) break;
    std::sort(pattern.arrivals.begin(), pattern.arrivals.end(),
              [](const OracleArrival& a, const OracleArrival& b) {
                if (a.time != b.time) return a.time < b.time;
                return a.seq < b.seq;
              });
    if (iter == 399)
      throw std::runtime_error("make_sched_pattern: could not avoid service-instant ties");
  }
  return pattern;
}

bool sched_matches_oracle(const SchedPattern& pattern, std::uint64_t engine_seed,
                          std::string* mismatch) {
  auto expected =
      oracle_schedule(pattern.arrivals, pattern.policy, pattern.transmit_delay, 0);
  auto actual = run_sched_harness(pattern, engine_seed);
  auto describe = [](const OracleService& s) {
    std::ostringstream out;
    out << "seq " << s.packet.seq << " " << s.packet.outp << "/"
        << priority_symbol(s.packet.prio) << " start " << s.start << " finish "
        << s.finish;
    return out.str();
  };
  if (expected.size() != actual.size()) {
    if (mismatch)
      *mismatch = "service count " + std::to_string(actual.size()) + " vs oracle " +
                  std::to_string(expected.size());
    return false;
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (expected[i].packet.seq != actual[i].packet.seq ||
        expected[i].packet.outp != actual[i].packet.outp ||
        expected[i].start != actual[i].start || expected[i].finish != actual[i].finish) {
      if (mismatch)
        *mismatch = "service " + std::to_string(i) + ": net " + describe(actual[i]) +
                    " vs oracle " + describe(expected[i]);
      return false;
    }
  }
  return true;
}

}  // namespace cpnsw::testing
