#ifndef CPNSW_NETDUMP_HPP
#define CPNSW_NETDUMP_HPP

#include <string>

#include "cpnsw/net.hpp"

namespace cpnsw {

/// Renders the flattened net as a dot digraph: places as ellipses labelled
/// id : colorset, transitions as boxes (guard included), arcs labelled with
/// their pattern or production expressions.
std::string dump_net(const Net& net);

}  // namespace cpnsw

#endif
