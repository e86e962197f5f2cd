#include "cpnsw/net.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cpnsw {

void TokenBag::add(TimedToken t) {
  auto it = std::upper_bound(tokens_.begin(), tokens_.end(), t);
  tokens_.insert(it, std::move(t));
}

void TokenBag::remove(const TimedToken& t) {
  auto it = std::lower_bound(tokens_.begin(), tokens_.end(), t);
  if (it == tokens_.end() || !(*it == t))
    throw std::runtime_error("TokenBag: token not present: " + t.to_string());
  tokens_.erase(it);
}

bool TokenBag::contains(const TimedToken& t) const {
  auto it = std::lower_bound(tokens_.begin(), tokens_.end(), t);
  return it != tokens_.end() && *it == t;
}

std::string TokenBag::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i) out << "++";
    out << tokens_[i].to_string();
  }
  return out.str();
}

std::vector<TimedToken> evaluate_arc(const OutputArc& arc, const Binding& binding,
                                     TimeUnit clock) {
  std::vector<TimedToken> out;
  for (const auto& prod : arc.productions) {
    if (prod.condition && !prod.condition->eval_bool(binding)) continue;
    out.push_back(TimedToken{prod.value->eval(binding), clock + prod.delay});
  }
  return out;
}

const Place* Page::find_place(const std::string& place_id) const {
  for (const auto& p : places)
    if (p.id == place_id) return &p;
  return nullptr;
}

const Place& Net::place(const std::string& id) const {
  return places[place_index(id)];
}

std::size_t Net::place_index(const std::string& id) const {
  auto it = place_index_.find(id);
  if (it == place_index_.end())
    throw std::runtime_error("net: unknown place '" + id + "'");
  return it->second;
}

bool Net::has_place(const std::string& id) const {
  return place_index_.count(id) != 0;
}

void Net::index() {
  place_index_.clear();
  for (std::size_t i = 0; i < places.size(); ++i) {
    if (!place_index_.emplace(places[i].id, i).second)
      throw std::runtime_error("net: duplicate place id '" + places[i].id + "'");
  }
}

void Net::validate() const {
  std::set<std::string> tids;
  for (const auto& t : transitions) {
    if (!tids.insert(t.id).second)
      throw std::runtime_error("net: duplicate transition id '" + t.id + "'");

    std::vector<std::string> bound;
    for (const auto& in : t.inputs) {
      place_index(in.place);
      in.pattern.collect_vars(bound);
    }
    auto is_bound = [&](const std::string& v) {
      return std::find(bound.begin(), bound.end(), v) != bound.end();
    };

    std::vector<std::string> used;
    if (t.guard) t.guard->collect_vars(used);
    for (const auto& out : t.outputs) {
      place_index(out.place);
      for (const auto& prod : out.productions) {
        prod.value->collect_vars(used);
        if (prod.condition) prod.condition->collect_vars(used);
        if (prod.delay < 0)
          throw std::runtime_error("net: negative arc delay on '" + t.id + "'");
      }
    }
    for (const auto& v : used) {
      if (!is_bound(v))
        throw std::runtime_error("net: transition '" + t.id + "' uses unbound variable '" + v + "'");
    }
    if (t.firing_delay < 0)
      throw std::runtime_error("net: negative firing delay on '" + t.id + "'");
  }
  for (const auto& p : places) {
    for (const auto& tok : p.initial_marking) {
      if (tok.timestamp < 0)
        throw std::runtime_error("net: negative initial timestamp in '" + p.id + "'");
      if (!p.colorset.matches(tok.value))
        throw std::runtime_error("net: initial token " + tok.value.to_string() +
                                 " violates colorset of '" + p.id + "'");
    }
  }
}

namespace {

struct FlattenContext {
  Net net;
  std::set<const Page*> on_path;  // cycle detection
};

ExprPtr clone_expr(const ExprPtr& e) { return e; }  // expressions are immutable

// Emits `page` into ctx.net with id prefix `path`. `fused` maps this page's
// port place ids to already-emitted parent place ids.
void emit_page(FlattenContext& ctx, const Page& page, const std::string& path,
               const std::map<std::string, std::string>& fused) {
  if (ctx.on_path.count(&page))
    throw std::runtime_error("flatten: page cycle through '" + page.id + "'");
  ctx.on_path.insert(&page);

  // Local place id -> flattened id.
  std::map<std::string, std::string> rename;
  for (const auto& p : page.places) {
    auto it = fused.find(p.id);
    if (it != fused.end()) {
      // Port place: reuse the socket's flattened place.
      const std::string& target = it->second;
      std::size_t idx = ctx.net.place_index(target);
      Place& socket = ctx.net.places[idx];
      if (!(socket.colorset == p.colorset))
        throw std::runtime_error("flatten: colorset mismatch fusing port '" + p.id +
                                 "' of page '" + page.id + "' onto '" + target + "'");
      if (socket.timed != p.timed)
        throw std::runtime_error("flatten: timed flag mismatch fusing port '" + p.id +
                                 "' onto '" + target + "'");
      for (const auto& tok : p.initial_marking) socket.initial_marking.push_back(tok);
      rename[p.id] = target;
    } else {
      Place copy = p;
      copy.id = path + p.id;
      rename[p.id] = copy.id;
      ctx.net.places.push_back(std::move(copy));
      ctx.net.index();
    }
  }

  for (const auto& t : page.transitions) {
    Transition copy;
    copy.id = path + t.id;
    copy.guard = clone_expr(t.guard);
    copy.firing_delay = t.firing_delay;
    for (const auto& in : t.inputs) {
      auto it = rename.find(in.place);
      if (it == rename.end())
        throw std::runtime_error("flatten: transition '" + t.id + "' references unknown place '" + in.place + "'");
      copy.inputs.push_back(InputArc{it->second, in.pattern});
    }
    for (const auto& out : t.outputs) {
      auto it = rename.find(out.place);
      if (it == rename.end())
        throw std::runtime_error("flatten: transition '" + t.id + "' references unknown place '" + out.place + "'");
      copy.outputs.push_back(OutputArc{it->second, out.productions});
    }
    ctx.net.transitions.push_back(std::move(copy));
  }

  for (const auto& sub : page.subs) {
    if (!sub.page) throw std::runtime_error("flatten: null sub-page under '" + page.id + "'");
    std::map<std::string, std::string> sub_fused;
    std::set<std::string> used_sockets;
    for (const auto& [port, socket] : sub.port_to_socket) {
      if (!used_sockets.insert(socket).second)
        throw std::runtime_error("flatten: sub '" + sub.id +
                                 "' maps two ports onto socket '" + socket + "'");
    }
    for (const auto& [port, socket] : sub.port_to_socket) {
      const Place* port_place = sub.page->find_place(port);
      if (!port_place)
        throw std::runtime_error("flatten: sub '" + sub.id + "' maps unknown port '" + port + "'");
      if (std::find(sub.page->ports.begin(), sub.page->ports.end(), port) ==
          sub.page->ports.end())
        throw std::runtime_error("flatten: place '" + port + "' of page '" +
                                 sub.page->id + "' is not declared as a port");
      auto it = rename.find(socket);
      if (it == rename.end())
        throw std::runtime_error("flatten: sub '" + sub.id + "' maps port to unknown socket '" + socket + "'");
      sub_fused[port] = it->second;
    }
    for (const auto& port : sub.page->ports) {
      if (!sub_fused.count(port))
        throw std::runtime_error("flatten: sub '" + sub.id + "' leaves port '" + port + "' unmapped");
    }
    emit_page(ctx, *sub.page, path + sub.id + "/", sub_fused);
  }

  ctx.on_path.erase(&page);
}

}  // namespace

Net flatten(const Page& root) {
  FlattenContext ctx;
  ctx.net.index();
  emit_page(ctx, root, "", {});
  ctx.net.index();
  ctx.net.validate();
  return std::move(ctx.net);
}

}  // namespace cpnsw
