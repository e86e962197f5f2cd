#ifndef CPNSW_SCHED_HPP
#define CPNSW_SCHED_HPP

#include <string>
#include <vector>

#include "cpnsw/net.hpp"

namespace cpnsw {

enum class Priority : int;

/// Output-port scheduling policy. WRR weights are per-priority packet
/// quanta (visit budgets), highest priority first.
struct SchedulerChoice {
  enum class Policy { StaticPriority, Wrr };

  Policy policy = Policy::StaticPriority;
  std::vector<int> weights;  // used by Wrr only

  static SchedulerChoice static_priority() { return {Policy::StaticPriority, {}}; }
  static SchedulerChoice wrr(std::vector<int> w) { return {Policy::Wrr, std::move(w)}; }
};

/// Non-preemptive static priority scheduler page for one output port.
/// Ports: in_<prio>..., bp, out. Queue places Ptr4'1.. are per-priority
/// FIFO lists; service takes the head of the highest non-empty queue when
/// bp is marked and delivers it after `transmit_delay`.
Page build_static_priority_page(const std::vector<Priority>& priorities,
                                TimeUnit transmit_delay);

/// Weighted Round Robin scheduler page for one output port. The server
/// position lives in Spos, the remaining visit quantum in wfi; the server
/// departs a queue when it empties or the quantum reaches zero, and idles
/// in place while every queue is empty.
Page build_wrr_page(const std::vector<Priority>& priorities,
                    const std::vector<int>& weights, TimeUnit transmit_delay);

/// One packet arrival for the reference scheduler.
struct OracleArrival {
  std::string outp;
  Priority prio;
  std::int64_t seq = 0;
  TimeUnit time = 0;
};

struct OracleService {
  OracleArrival packet;
  TimeUnit start = 0;
  TimeUnit finish = 0;
};

/// Independent discrete-event reference for both policies (no Petri net):
/// per-port non-preemptive single server with FIFO per-priority queues.
/// Arrivals must be time-sorted. Returns services ordered by start time
/// (ties by port). The line turnaround mirrors the switch pages: after a
/// delivery the server becomes free again `turnaround` t.u later.
std::vector<OracleService> oracle_schedule(const std::vector<OracleArrival>& arrivals,
                                           const SchedulerChoice& policy,
                                           TimeUnit transmit_delay,
                                           TimeUnit turnaround = 0);

}  // namespace cpnsw

#endif
