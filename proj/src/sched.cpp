#include "cpnsw/sched.hpp"

#include <stdexcept>

#include "cpnsw/model.hpp"

namespace cpnsw {

namespace {

std::string queue_place_name(std::size_t rank) {
  // Distinct per-priority reception queues, highest priority first.
  return "Ptr4'" + std::to_string(rank + 1);
}

void add_queue_bank(Page& page, const std::vector<Priority>& priorities) {
  for (std::size_t i = 0; i < priorities.size(); ++i) {
    std::string in_id = std::string("in_") + priority_symbol(priorities[i]);
    page.places.push_back(Place{in_id, packet_colorset(), true, {}});
    page.ports.push_back(in_id);
    page.places.push_back(Place{queue_place_name(i),
                                Colorset::seq_of(packet_colorset()), false,
                                {TimedToken{ColorValue::seq({}), 0}}});

    Transition enq;
    enq.id = std::string("enq_") + priority_symbol(priorities[i]);
    enq.inputs = {InputArc{in_id, Pattern::any("p")},
                  InputArc{queue_place_name(i), Pattern::any("Lw")}};
    enq.outputs = {OutputArc{
        queue_place_name(i),
        {Production{Expr::concat(Expr::var("Lw"), Expr::mk_seq({Expr::var("p")})),
                    nullptr, 0}}}};
    page.transitions.push_back(std::move(enq));
  }
  page.places.push_back(Place{"bp", Colorset::unit(), true, {}});
  page.places.push_back(Place{"out", packet_colorset(), true, {}});
  page.ports.push_back("bp");
  page.ports.push_back("out");
}

}  // namespace

Page build_static_priority_page(const std::vector<Priority>& priorities,
                                TimeUnit transmit_delay) {
  if (priorities.empty())
    throw std::runtime_error("static priority page needs at least one queue");
  Page page;
  page.id = "sp";
  add_queue_bank(page, priorities);

  // One service transition per class; serving class k requires every
  // higher-priority queue to be empty. Transmission holds the line (bp
  // token) until the consumer releases it, so it is non-preemptive.
  for (std::size_t k = 0; k < priorities.size(); ++k) {
    Transition serve;
    serve.id = std::string("serve_") + priority_symbol(priorities[k]);
    ExprPtr guard = Expr::ne(Expr::var("Lw"), Expr::nil());
    serve.inputs.push_back(InputArc{queue_place_name(k), Pattern::any("Lw")});
    for (std::size_t j = 0; j < k; ++j) {
      std::string hv = "Lh" + std::to_string(j);
      serve.inputs.push_back(InputArc{queue_place_name(j), Pattern::any(hv)});
      serve.outputs.push_back(OutputArc{
          queue_place_name(j), {Production{Expr::var(hv), nullptr, 0}}});
      guard = Expr::logic_and(guard, Expr::eq(Expr::var(hv), Expr::nil()));
    }
    serve.inputs.push_back(InputArc{"bp", Pattern::any("u")});
    serve.guard = guard;
    serve.outputs.push_back(OutputArc{
        queue_place_name(k), {Production{Expr::tail(Expr::var("Lw")), nullptr, 0}}});
    serve.outputs.push_back(OutputArc{
        "out", {Production{Expr::head(Expr::var("Lw")), nullptr, transmit_delay}}});
    page.transitions.push_back(std::move(serve));
  }
  return page;
}

Page build_wrr_page(const std::vector<Priority>& priorities,
                    const std::vector<int>& weights, TimeUnit transmit_delay) {
  if (priorities.empty()) throw std::runtime_error("WRR page needs at least one queue");
  if (weights.size() != priorities.size())
    throw std::runtime_error("WRR page needs one weight per priority");
  for (int w : weights)
    if (w < 1) throw std::runtime_error("WRR weights must be >= 1");

  Page page;
  page.id = "wrr";
  add_queue_bank(page, priorities);

  // Server position (the "E" token, folded over queues by colour) and the
  // remaining visit quantum.
  page.places.push_back(Place{
      "Spos", Colorset::symbol(), false,
      {TimedToken{ColorValue::symbol(priority_symbol(priorities[0])), 0}}});
  page.places.push_back(Place{"wfi", Colorset::integer(), false,
                              {TimedToken{ColorValue::integer(weights[0]), 0}}});

  auto sym_of = [&](std::size_t k) {
    return ColorValue::symbol(priority_symbol(priorities[k]));
  };

  for (std::size_t k = 0; k < priorities.size(); ++k) {
    std::size_t next = (k + 1) % priorities.size();

    // TH1-style service: transmit the head, decrement the quantum.
    Transition serve;
    serve.id = std::string("serve_") + priority_symbol(priorities[k]);
    serve.inputs = {InputArc{"Spos", Pattern::constant(sym_of(k))},
                    InputArc{"wfi", Pattern::any("n")},
                    InputArc{queue_place_name(k), Pattern::any("Lw")},
                    InputArc{"bp", Pattern::any("u")}};
    serve.guard = Expr::logic_and(Expr::ne(Expr::var("Lw"), Expr::nil()),
                                  Expr::ge(Expr::var("n"), Expr::num(1)));
    serve.outputs = {
        OutputArc{"Spos", {Production{Expr::lit(sym_of(k)), nullptr, 0}}},
        OutputArc{"wfi", {Production{Expr::sub(Expr::var("n"), Expr::num(1)), nullptr, 0}}},
        OutputArc{queue_place_name(k), {Production{Expr::tail(Expr::var("Lw")), nullptr, 0}}},
        OutputArc{"out", {Production{Expr::head(Expr::var("Lw")), nullptr, transmit_delay}}}};
    page.transitions.push_back(std::move(serve));

    // Departure on exhausted quantum.
    Transition rotq;
    rotq.id = std::string("rotq_") + priority_symbol(priorities[k]);
    rotq.inputs = {InputArc{"Spos", Pattern::constant(sym_of(k))},
                   InputArc{"wfi", Pattern::any("n")}};
    rotq.guard = Expr::eq(Expr::var("n"), Expr::num(0));
    rotq.outputs = {
        OutputArc{"Spos", {Production{Expr::lit(sym_of(next)), nullptr, 0}}},
        OutputArc{"wfi", {Production{Expr::num(weights[next]), nullptr, 0}}}};
    page.transitions.push_back(std::move(rotq));

    // Departure on empty queue, but only while some other queue has work;
    // with every queue empty the server waits in place for new packets.
    if (priorities.size() > 1) {
      Transition rote;
      rote.id = std::string("rote_") + priority_symbol(priorities[k]);
      rote.inputs = {InputArc{"Spos", Pattern::constant(sym_of(k))},
                     InputArc{"wfi", Pattern::any("n")}};
      ExprPtr someone_waiting;
      for (std::size_t j = 0; j < priorities.size(); ++j) {
        std::string lv = "L" + std::to_string(j);
        rote.inputs.push_back(InputArc{queue_place_name(j), Pattern::any(lv)});
        rote.outputs.push_back(OutputArc{
            queue_place_name(j), {Production{Expr::var(lv), nullptr, 0}}});
        if (j != k) {
          ExprPtr nonempty = Expr::ne(Expr::var(lv), Expr::nil());
          someone_waiting = someone_waiting
                                ? Expr::logic_or(someone_waiting, nonempty)
                                : nonempty;
        }
      }
      rote.guard = Expr::logic_and(
          Expr::logic_and(Expr::eq(Expr::var("L" + std::to_string(k)), Expr::nil()),
                          Expr::ge(Expr::var("n"), Expr::num(1))),
          someone_waiting);
      rote.outputs.push_back(OutputArc{
          "Spos", {Production{Expr::lit(sym_of(next)), nullptr, 0}}});
      // The leftover quantum is discarded; the next queue starts fresh.
      rote.outputs.push_back(OutputArc{
          "wfi", {Production{Expr::num(weights[next]), nullptr, 0}}});
      page.transitions.push_back(std::move(rote));
    }
  }
  return page;
}

}  // namespace cpnsw
