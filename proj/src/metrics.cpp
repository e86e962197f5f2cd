#include "cpnsw/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cpnsw {

namespace {

bool is_packet(const ColorValue& v) {
  return packet_colorset().matches(v);
}

std::int64_t packet_seq(const ColorValue& v) { return v.items()[3].int_value(); }

}  // namespace

std::vector<DeliveryRecord> extract_records(const Trace& trace) {
  std::map<std::int64_t, DeliveryRecord> by_seq;
  bool saw_model_ids = false;
  for (const auto& e : trace.events) {
    if (ids::ends_with(e.transition, ids::kEmitSuffix) || e.transition == "emit") {
      saw_model_ids = true;
      for (const auto& [place, tok] : e.produced) {
        if (!is_packet(tok.value)) continue;
        DeliveryRecord rec;
        rec.seq = packet_seq(tok.value);
        rec.outp = tok.value.items()[1].sym();
        rec.prio = priority_from_symbol(tok.value.items()[2].sym());
        rec.created_at = e.clock;
        if (!by_seq.emplace(rec.seq, rec).second)
          throw std::runtime_error("extract_records: duplicate packet seq " +
                                   std::to_string(rec.seq));
      }
    } else if (ids::ends_with(e.transition, ids::kTickSuffix)) {
      saw_model_ids = true;
      for (const auto& [place, tok] : e.produced) {
        if (!ids::ends_with(place, ids::kDoneSuffix)) continue;
        if (!is_packet(tok.value)) continue;
        auto it = by_seq.find(packet_seq(tok.value));
        if (it == by_seq.end())
          throw std::runtime_error("extract_records: consumption of unknown packet seq " +
                                   std::to_string(packet_seq(tok.value)));
        it->second.consumed_at = e.clock;
      }
    }
  }
  if (!trace.events.empty() && !saw_model_ids)
    throw std::runtime_error("extract_records: trace does not come from a switch-model net");
  std::vector<DeliveryRecord> records;
  records.reserve(by_seq.size());
  for (auto& [seq, rec] : by_seq) records.push_back(std::move(rec));
  return records;
}

RunStats summarize(const std::vector<DeliveryRecord>& records) {
  RunStats stats;
  for (Priority p : default_priorities()) stats.per_priority[p];  // stable rows
  struct Acc {
    double sum = 0, sumsq = 0;
    TimeUnit max = 0;
  };
  std::map<Priority, Acc> acc;
  for (const auto& r : records) {
    auto& s = stats.per_priority[r.prio];
    ++s.generated;
    if (r.consumed_at) {
      if (*r.consumed_at < r.created_at)
        throw std::runtime_error("summarize: consumed before created (seq " +
                                 std::to_string(r.seq) + ")");
      ++s.consumed;
      auto d = static_cast<double>(*r.consumed_at - r.created_at);
      auto& a = acc[r.prio];
      a.sum += d;
      a.sumsq += d * d;
      a.max = std::max(a.max, *r.consumed_at - r.created_at);
    }
  }
  for (auto& [p, s] : stats.per_priority) {
    s.consumed_fraction =
        s.generated == 0 ? 0.0 : static_cast<double>(s.consumed) / static_cast<double>(s.generated);
    s.famine = s.generated > 0 && s.consumed == 0;
    if (s.consumed > 0) {
      const auto& a = acc[p];
      double n = static_cast<double>(s.consumed);
      double mean = a.sum / n;
      double var = a.sumsq / n - mean * mean;
      s.delay_mean = mean;
      s.delay_std = std::sqrt(std::max(0.0, var));
      s.delay_max = a.max;
    }
  }
  return stats;
}

std::map<Priority, bool> famine_check(const RunStats& stats, double threshold) {
  if (threshold < 0.0 || threshold > 1.0)
    throw std::runtime_error("famine_check: threshold outside [0,1]");
  std::map<Priority, bool> flags;
  for (const auto& [p, s] : stats.per_priority)
    flags[p] = s.generated > 0 && s.consumed_fraction < threshold;
  return flags;
}

namespace {

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string records_csv(const std::vector<DeliveryRecord>& records) {
  std::vector<const DeliveryRecord*> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(),
            [](const DeliveryRecord* a, const DeliveryRecord* b) { return a->seq < b->seq; });
  std::string out = "seq,prio,port,created,consumed,delay\n";
  for (const auto* r : rows) {
    out += std::to_string(r->seq);
    out += ",";
    out += priority_symbol(r->prio);
    out += ",";
    out += r->outp;
    out += ",";
    out += std::to_string(r->created_at);
    out += ",";
    if (r->consumed_at) {
      out += std::to_string(*r->consumed_at);
      out += ",";
      out += std::to_string(*r->consumed_at - r->created_at);
    } else {
      out += ",";
    }
    out += "\n";
  }
  return out;
}

std::string stats_csv(const RunStats& stats) {
  std::string out = "prio,generated,consumed,consumed_fraction,delay_mean,delay_std,delay_max,famine\n";
  for (const auto& [p, s] : stats.per_priority) {
    out += priority_symbol(p);
    out += "," + std::to_string(s.generated);
    out += "," + std::to_string(s.consumed);
    out += "," + fmt(s.consumed_fraction, 6);
    out += ",";
    if (s.delay_mean) out += fmt(*s.delay_mean, 4);
    out += ",";
    if (s.delay_std) out += fmt(*s.delay_std, 4);
    out += ",";
    if (s.delay_max) out += std::to_string(*s.delay_max);
    out += ",";
    out += s.famine ? "1" : "0";
    out += "\n";
  }
  return out;
}

std::vector<DeliveryRecord> parse_records_csv(const std::string& text) {
  std::vector<DeliveryRecord> records;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "seq,prio,port,created,consumed,delay")
    throw std::runtime_error("records csv: bad header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      auto c = line.find(',', pos);
      if (c == std::string::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, c - pos));
      pos = c + 1;
    }
    if (fields.size() != 6) throw std::runtime_error("records csv: bad row: " + line);
    DeliveryRecord r;
    r.seq = std::stoll(fields[0]);
    r.prio = priority_from_symbol(fields[1]);
    r.outp = fields[2];
    r.created_at = std::stoll(fields[3]);
    if (!fields[4].empty()) r.consumed_at = std::stoll(fields[4]);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace cpnsw
