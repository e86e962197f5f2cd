#ifndef CPNSW_MODEL_HPP
#define CPNSW_MODEL_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cpnsw/net.hpp"
#include "cpnsw/sched.hpp"

namespace cpnsw {

/// Frame priority classes carried by packets, highest first.
enum class Priority : int { High, Mean, Low };

const char* priority_symbol(Priority p);   // "H", "M", "b"
Priority priority_from_symbol(const std::string& s);
std::vector<Priority> default_priorities();

/// Packet colour: (input port, output port, priority, sequence id).
/// The sequence id is bookkeeping for measurements; no guard or routing
/// condition ever reads it.
Colorset packet_colorset();
ColorValue make_packet(const std::string& inp, const std::string& outp,
                       Priority prio, std::int64_t seq);

struct Emission {
  std::string outp;
  Priority prio = Priority::High;
  int count = 1;
};

struct SourceSpec {
  TimeUnit period = 5;
  std::vector<Emission> emissions;
  TimeUnit start_offset = 0;
};

struct ConsumerSpec {
  TimeUnit period = 5;
  std::string port;
  int fold = 3;  // logical consumers folded into this page
  TimeUnit start_offset = 0;
};

struct StageDelays {
  TimeUnit ingress_fifo = 2;
  TimeUnit demux = 1;
  TimeUnit queue = 1;
  TimeUnit transmit = 4;
  TimeUnit sum() const { return ingress_fifo + demux + queue + transmit; }
};

struct SwitchConfig {
  std::vector<std::string> output_ports = {"O1", "O2"};
  std::vector<Priority> priorities = default_priorities();
  StageDelays stage_delays;
};

struct StopCondition {
  std::uint64_t max_steps = 10000;
  TimeUnit max_time = 565;
};

struct Scenario {
  std::vector<SourceSpec> sources;
  std::vector<ConsumerSpec> consumers;
  SwitchConfig switch_config;
  SchedulerChoice scheduler;
  StopCondition stop;
  std::uint64_t seed = 1;

  /// Throws on any invariant violation (bad periods, unknown ports,
  /// emissions without a consumer, bad weights, ...).
  void validate() const;
};

/// Page builders. Each returns a self-contained page whose port places are
/// listed in Page::ports; assemble_switch wires them together.
Page build_periodic_source(const SourceSpec& spec, std::size_t source_index);
Page build_shared_fifo(TimeUnit ingress_delay);
Page build_demux(const std::vector<std::string>& ports,
                 const std::vector<Priority>& priorities, TimeUnit demux_delay,
                 TimeUnit queue_delay);
Page build_periodic_consumer(const ConsumerSpec& spec,
                             const std::vector<Priority>& priorities);

/// Full hierarchical net for a scenario: root page with traffic_source,
/// switch and consumers substitution transitions (Ptr1/Ptr2/Ptr2'/Pbp1/Pbp2
/// at the root), the switch page holding fifo -> demux -> per-port
/// scheduler pages.
Page assemble_switch(const Scenario& scenario);

/// Delivery place id ("Ptr2", "Ptr2'", "Ptr2''", ...) and availability
/// place id ("Pbp1", "Pbp2", ...) for the i-th output port.
std::string delivery_place_name(std::size_t port_index);
std::string availability_place_name(std::size_t port_index);

/// The two experiment scenarios: six folded periodic sources (one packet
/// per (port, priority) pair per period) and, for the congested variant,
/// two extra packets per source per period (tripled load).
Scenario base_scenario(SchedulerChoice scheduler);
Scenario congestion_scenario(SchedulerChoice scheduler);

/// Id conventions used by the metrics layer to interpret traces.
namespace ids {
inline constexpr const char* kEmitSuffix = "/emit";
inline constexpr const char* kTickSuffix = "/tick";
inline constexpr const char* kDoneSuffix = "/done";
inline constexpr const char* kServeInfix = "/serve_";
bool ends_with(const std::string& s, const std::string& suffix);
}  // namespace ids

}  // namespace cpnsw

#endif
