#include "cpnsw/netdump.hpp"

#include <sstream>

namespace cpnsw {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string dump_net(const Net& net) {
  std::ostringstream out;
  out << "digraph net {\n";
  for (const auto& p : net.places) {
    out << "  " << quote(p.id) << " [shape=ellipse, label="
        << quote(p.id + " : " + p.colorset.to_string() + (p.timed ? "" : " (untimed)"))
        << "];\n";
  }
  for (const auto& t : net.transitions) {
    std::string label = t.id;
    if (t.guard) label += " [" + t.guard->to_string() + "]";
    if (t.firing_delay > 0) label += " @+" + std::to_string(t.firing_delay);
    out << "  " << quote(t.id) << " [shape=box, label=" << quote(label) << "];\n";
  }
  for (const auto& t : net.transitions) {
    for (const auto& in : t.inputs) {
      out << "  " << quote(in.place) << " -> " << quote(t.id)
          << " [label=" << quote(in.pattern.to_string()) << "];\n";
    }
    for (const auto& arc : t.outputs) {
      std::string label;
      for (std::size_t i = 0; i < arc.productions.size(); ++i) {
        const auto& prod = arc.productions[i];
        if (i) label += " ++ ";
        if (prod.condition) label += "if " + prod.condition->to_string() + " then ";
        label += prod.value->to_string();
        if (prod.delay > 0) label += "@+" + std::to_string(prod.delay);
      }
      out << "  " << quote(t.id) << " -> " << quote(arc.place)
          << " [label=" << quote(label) << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace cpnsw
