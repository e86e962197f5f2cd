#ifndef CPNSW_METRICS_HPP
#define CPNSW_METRICS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpnsw/engine.hpp"
#include "cpnsw/model.hpp"

namespace cpnsw {

/// Per-packet life record reconstructed from a trace.
struct DeliveryRecord {
  std::int64_t seq = 0;
  Priority prio = Priority::High;
  std::string outp;
  TimeUnit created_at = 0;
  std::optional<TimeUnit> consumed_at;  // absent when unconsumed at horizon

  bool operator==(const DeliveryRecord& other) const = default;
};

struct PriorityStats {
  std::uint64_t generated = 0;
  std::uint64_t consumed = 0;
  double consumed_fraction = 0.0;  // consumed / generated (0 when none generated)
  std::optional<double> delay_mean;  // absent when nothing was consumed
  std::optional<double> delay_std;   // population standard deviation
  std::optional<TimeUnit> delay_max;
  bool famine = false;  // generated > 0 and consumed == 0
};

struct RunStats {
  std::map<Priority, PriorityStats> per_priority;
};

/// One record per generated packet; created_at from the emission firing,
/// consumed_at from the consumer tick that produced it into a done place.
/// Throws if the trace does not come from a switch-model net.
std::vector<DeliveryRecord> extract_records(const Trace& trace);

RunStats summarize(const std::vector<DeliveryRecord>& records);

/// Flags priorities whose consumed fraction falls below the threshold.
/// Classes with no generated packets are never flagged.
std::map<Priority, bool> famine_check(const RunStats& stats, double threshold);

std::string records_csv(const std::vector<DeliveryRecord>& records);
std::string stats_csv(const RunStats& stats);
std::vector<DeliveryRecord> parse_records_csv(const std::string& text);

}  // namespace cpnsw

#endif
