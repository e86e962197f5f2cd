#ifndef CPNSW_SCENARIO_IO_HPP
#define CPNSW_SCENARIO_IO_HPP

#include <string>

#include "cpnsw/model.hpp"

namespace cpnsw {

/// Parses the JSON scenario schema (see README). Unknown keys are
/// rejected; diagnostics carry a line number. The parsed scenario is
/// validated before being returned.
Scenario parse_scenario(const std::string& text);

/// Canonical form with every default filled in; parse(normalize(x)) is a
/// fixed point.
std::string normalize_scenario(const Scenario& scenario);

/// Built-in scenarios: sp-base, sp-congested, wrr-base, wrr-congested.
bool is_builtin_scenario(const std::string& name);
Scenario builtin_scenario(const std::string& name);

}  // namespace cpnsw

#endif
