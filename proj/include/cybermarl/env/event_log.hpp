// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_ENV_EVENT_LOG_HPP_
#define CYBERMARL_ENV_EVENT_LOG_HPP_

#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cybermarl/env/reward.hpp"

namespace cybermarl::env {

/// One JSON-lines record per simulator step:
/// {"step":3,"events":[{"zone":"Contractor","kind":"RedImpactOrAccess"}],"reward":-5.0}
struct StepRecord {
  int step = 0;
  std::vector<PenaltyEvent> events;
  double reward = 0.0;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

inline nlohmann::json to_json(const StepRecord& r) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : r.events) {
    events.push_back({{"zone", std::string(zone_name(e.zone))}, {"kind", std::string(penalty_kind_name(e.kind))}});
  }
  return {{"step", r.step}, {"events", std::move(events)}, {"reward", r.reward}};
}

inline StepRecord step_record_from_json(const nlohmann::json& j) {
  StepRecord r;
  r.step = j.at("step").get<int>();
  r.reward = j.at("reward").get<double>();
  for (const auto& e : j.at("events")) {
    const auto zone = parse_zone(e.at("zone").get<std::string>());
    const auto kind = parse_penalty_kind(e.at("kind").get<std::string>());
    if (!zone || !kind) throw std::invalid_argument("malformed event record: " + e.dump());
    r.events.push_back({*zone, *kind, r.step});
  }
  return r;
}

inline void write_event_line(std::ostream& out, const StepRecord& r) { out << to_json(r).dump() << '\n'; }

inline std::vector<StepRecord> parse_event_log(std::string_view text) {
  std::vector<StepRecord> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    if (!line.empty()) out.push_back(step_record_from_json(nlohmann::json::parse(line)));
    pos = end + 1;
  }
  return out;
}

}  // namespace cybermarl::env

#endif  // CYBERMARL_ENV_EVENT_LOG_HPP_
