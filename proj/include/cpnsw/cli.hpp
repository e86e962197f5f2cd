#ifndef CPNSW_CLI_HPP
#define CPNSW_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "cpnsw/model.hpp"

namespace cpnsw {

struct CliInvocation {
  std::string scenario;  // built-in name or file path
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> stop_steps;
  std::optional<TimeUnit> stop_time;
  std::optional<std::vector<int>> weights;
  std::string out_dir = "out";
  std::set<std::string> emit = {"stats", "records"};  // + "trace", "net"
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitBuildError = 2;
inline constexpr int kExitRuntimeError = 3;

/// Resolves the scenario, runs the simulation, writes the requested output
/// files plus the normalized scenario, and prints a stats table. Famine is
/// a result, not a failure.
int run_command(const CliInvocation& invocation, std::ostream& out, std::ostream& err);

}  // namespace cpnsw

#endif
