#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "cpnsw/model.hpp"
#include "cpnsw/sched.hpp"

namespace cpnsw {

namespace {

// Single-port non-preemptive server state.
struct PortState {
  std::vector<std::deque<OracleArrival>> queues;  // by priority rank
  TimeUnit line_free_at = 0;
  std::size_t pos = 0;  // WRR server position
  int quantum = 0;      // WRR remaining visit budget

  bool all_empty() const {
    for (const auto& q : queues)
      if (!q.empty()) return false;
    return true;
  }
};

std::size_t rank_of(Priority p, const std::vector<Priority>& prios) {
  for (std::size_t i = 0; i < prios.size(); ++i)
    if (prios[i] == p) return i;
  throw std::runtime_error("oracle: arrival with unconfigured priority");
}

// Mirrors the WRR page's eager rotations: leave on an exhausted quantum,
// leave an empty queue while some other queue has work, park otherwise.
void wrr_settle(PortState& st, const std::vector<int>& weights) {
  for (std::size_t hops = 0; hops <= weights.size() + 1; ++hops) {
    if (st.quantum == 0) {
      st.pos = (st.pos + 1) % weights.size();
      st.quantum = weights[st.pos];
      continue;
    }
    if (st.queues[st.pos].empty() && !st.all_empty()) {
      st.pos = (st.pos + 1) % weights.size();
      st.quantum = weights[st.pos];
      continue;
    }
    return;
  }
  throw std::logic_error("oracle: WRR rotation did not settle");
}

std::vector<OracleService> schedule_port(const std::vector<OracleArrival>& xs,
                                         const SchedulerChoice& policy,
                                         TimeUnit transmit_delay, TimeUnit turnaround,
                                         const std::vector<Priority>& prios) {
  const bool wrr = policy.policy == SchedulerChoice::Policy::Wrr;
  PortState st;
  st.queues.resize(prios.size());
  st.quantum = wrr ? policy.weights[0] : 0;

  std::vector<OracleService> services;
  std::size_t idx = 0;
  TimeUnit now = 0;
  auto admit_until = [&](TimeUnit t) {
    while (idx < xs.size() && xs[idx].time <= t) {
      st.queues[rank_of(xs[idx].prio, prios)].push_back(xs[idx]);
      ++idx;
      if (wrr) wrr_settle(st, policy.weights);
    }
  };

  while (idx < xs.size() || !st.all_empty()) {
    if (st.all_empty()) {
      now = std::max(now, xs[idx].time);
      admit_until(now);
      continue;
    }
    TimeUnit start = std::max(now, st.line_free_at);
    if (idx < xs.size() && xs[idx].time <= start) {
      // Later arrivals up to the start instant are visible to the
      // selection (and may rotate the WRR server) before service begins.
      admit_until(start);
      continue;
    }
    std::size_t chosen;
    if (wrr) {
      wrr_settle(st, policy.weights);
      chosen = st.pos;
      if (st.queues[chosen].empty())
        throw std::logic_error("oracle: WRR settled on an empty queue");
      --st.quantum;
    } else {
      chosen = prios.size();
      for (std::size_t k = 0; k < prios.size(); ++k) {
        if (!st.queues[k].empty()) {
          chosen = k;
          break;
        }
      }
    }
    OracleService sv;
    sv.packet = st.queues[chosen].front();
    st.queues[chosen].pop_front();
    sv.start = start;
    sv.finish = start + transmit_delay;
    services.push_back(sv);
    st.line_free_at = sv.finish + turnaround;
    now = start;
    if (wrr) wrr_settle(st, policy.weights);
  }
  return services;
}

}  // namespace

std::vector<OracleService> oracle_schedule(const std::vector<OracleArrival>& arrivals,
                                           const SchedulerChoice& policy,
                                           TimeUnit transmit_delay,
                                           TimeUnit turnaround) {
  for (std::size_t i = 1; i < arrivals.size(); ++i)
    if (arrivals[i].time < arrivals[i - 1].time)
      throw std::runtime_error("oracle: arrivals must be time-sorted");

  const std::vector<Priority> prios = default_priorities();
  if (policy.policy == SchedulerChoice::Policy::Wrr &&
      policy.weights.size() != prios.size())
    throw std::runtime_error("oracle: WRR needs one weight per priority");

  // Output ports are independent servers.
  std::map<std::string, std::vector<OracleArrival>> per_port;
  for (const auto& a : arrivals) per_port[a.outp].push_back(a);

  std::vector<OracleService> services;
  for (const auto& [port, xs] : per_port) {
    auto sv = schedule_port(xs, policy, transmit_delay, turnaround, prios);
    services.insert(services.end(), sv.begin(), sv.end());
  }
  std::stable_sort(services.begin(), services.end(),
                   [](const OracleService& a, const OracleService& b) {
                     if (a.start != b.start) return a.start < b.start;
                     return a.packet.outp < b.packet.outp;
                   });
  return services;
}

}  // namespace cpnsw
