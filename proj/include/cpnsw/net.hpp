#ifndef CPNSW_NET_HPP
#define CPNSW_NET_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cpnsw/color.hpp"
#include "cpnsw/expr.hpp"

namespace cpnsw {

using TimeUnit = std::int64_t;

/// A coloured token with its availability timestamp.
struct TimedToken {
  ColorValue value;
  TimeUnit timestamp = 0;

  bool operator==(const TimedToken& other) const {
    return timestamp == other.timestamp && value == other.value;
  }
  bool operator<(const TimedToken& other) const {
    int c = value.compare(other.value);
    if (c != 0) return c < 0;
    return timestamp < other.timestamp;
  }
  std::string to_string() const {
    return value.to_string() + "@" + std::to_string(timestamp);
  }
};

/// Multiset of timed tokens kept in canonical (sorted) order so that
/// binding enumeration is deterministic.
class TokenBag {
 public:
  void add(TimedToken t);
  /// Removes one occurrence; throws if absent.
  void remove(const TimedToken& t);
  bool contains(const TimedToken& t) const;
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::vector<TimedToken>& tokens() const { return tokens_; }
  bool operator==(const TokenBag& other) const { return tokens_ == other.tokens_; }
  std::string to_string() const;

 private:
  std::vector<TimedToken> tokens_;  // sorted
};

struct Place {
  std::string id;
  Colorset colorset;
  bool timed = true;  // untimed places ignore token timestamps
  std::vector<TimedToken> initial_marking;
};

struct InputArc {
  std::string place;
  Pattern pattern;
};

/// One token production on an output arc: value expression, optional
/// crossing condition, and a `@+delay` annotation.
struct Production {
  ExprPtr value;
  ExprPtr condition;  // null = unconditional
  TimeUnit delay = 0;
};

struct OutputArc {
  std::string place;
  std::vector<Production> productions;
};

struct Transition {
  std::string id;
  ExprPtr guard;  // null = true
  std::vector<InputArc> inputs;
  std::vector<OutputArc> outputs;
  TimeUnit firing_delay = 0;  // added to every produced token
};

/// Evaluates one output arc under a complete binding; produced tokens get
/// timestamp clock + production delay (the caller adds any firing delay).
std::vector<TimedToken> evaluate_arc(const OutputArc& arc, const Binding& binding,
                                     TimeUnit clock);

class Page;
using PagePtr = std::shared_ptr<const Page>;

/// Substitution transition: stands for a sub-page whose port places are
/// fused with the named parent (socket) places.
struct SubTransition {
  std::string id;
  PagePtr page;
  std::map<std::string, std::string> port_to_socket;  // sub place id -> parent place id
};

/// One level of a hierarchical net.
class Page {
 public:
  std::string id;
  std::vector<Place> places;
  std::vector<Transition> transitions;
  std::vector<std::string> ports;  // place ids exposed for fusion
  std::vector<SubTransition> subs;

  const Place* find_place(const std::string& place_id) const;
};

/// Flattened net: no substitution transitions, ids prefixed by page path.
class Net {
 public:
  std::vector<Place> places;
  std::vector<Transition> transitions;

  const Place& place(const std::string& id) const;
  std::size_t place_index(const std::string& id) const;
  bool has_place(const std::string& id) const;

  /// Structural checks: unique ids, arcs reference known places, every
  /// guard/output variable bound by some input arc. Throws on violation.
  void validate() const;

  void index();  // rebuild the id lookup (called by flatten/validate)

 private:
  std::map<std::string, std::size_t> place_index_;
};

/// Replaces substitution transitions by their sub-pages, fusing port places
/// onto socket places. Ids are prefixed with the page path ("sub/sub2/id").
/// Throws on page cycles or colorset mismatches across a fusion.
Net flatten(const Page& root);

}  // namespace cpnsw

#endif
