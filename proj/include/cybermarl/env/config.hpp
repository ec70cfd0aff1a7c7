// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_ENV_CONFIG_HPP_
#define CYBERMARL_ENV_CONFIG_HPP_

#include <array>
#include <string>
#include <string_view>

#include "cybermarl/env/reward.hpp"
#include "cybermarl/env/zone.hpp"
#include "cybermarl/kv_config.hpp"

namespace cybermarl::env {

enum class Layout {
  /// Four segments, nine zones, five blue agents.
  Standard,
  /// One defended zone (RestrictedA) behind the Internet plus the Contractor
  /// foothold, one blue agent. Used to compare centralized and independent
  /// critics where they must coincide.
  SingleZone,
};

/// Simulator knobs. The probabilities are behavioural constants of the scripted
/// red and green agents.
struct EnvConfig {
  Layout layout = Layout::Standard;
  std::array<int, kZoneCount> hosts_per_zone = {0, 3, 3, 3, 3, 3, 3, 3, 3};
  int max_steps = 50;

  double red_move_prob = 0.4;
  double red_spread_prob = 0.3;  // impact takes the remaining mass
  int greens_per_zone = 2;
  double green_local_work_prob = 0.5;
  double phishing_prob = 0.02;
  double monitor_detect_prob = 0.5;
  double false_alarm_prob = 0.01;
  int remove_entrench_limit = 3;

  RewardTable rewards = RewardTable::defaults();

  int hosts(ZoneId z) const { return hosts_per_zone[zone_code(z)]; }

  void validate() const {
    auto prob = [](std::string_view name, double p) {
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1]");
    };
    prob("red_move_prob", red_move_prob);
    prob("red_spread_prob", red_spread_prob);
    if (red_move_prob + red_spread_prob > 1.0) {
      throw ConfigError("red_move_prob + red_spread_prob must not exceed 1");
    }
    prob("green_local_work_prob", green_local_work_prob);
    prob("phishing_prob", phishing_prob);
    prob("monitor_detect_prob", monitor_detect_prob);
    prob("false_alarm_prob", false_alarm_prob);
    if (max_steps < 1) throw ConfigError("max_steps must be >= 1");
    if (greens_per_zone < 0) throw ConfigError("greens_per_zone must be >= 0");
    if (remove_entrench_limit < 0) throw ConfigError("remove_entrench_limit must be >= 0");
    for (auto z : kAllZones) {
      if (hosts(z) < 0) throw ConfigError("negative host count for " + std::string(zone_name(z)));
    }
  }
};

inline std::string_view layout_name(Layout l) { return l == Layout::Standard ? "standard" : "single_zone"; }

/// Applies one `key = value` setting. Returns false when the key is not an
/// environment key so callers can route it elsewhere.
inline bool apply_env_setting(EnvConfig& cfg, std::string_view key, std::string_view value) {
  auto real = [&] { return parse_double(key, value); };
  auto integer = [&] { return static_cast<int>(parse_integer(key, value)); };

  if (key == "layout") {
    if (value == "standard") cfg.layout = Layout::Standard;
    else if (value == "single_zone") cfg.layout = Layout::SingleZone;
    else throw ConfigError("unknown layout '" + std::string(value) + "'");
  } else if (key == "hosts_per_zone") {
    const int n = integer();
    for (auto z : kAllZones) {
      if (z != ZoneId::Internet) cfg.hosts_per_zone[zone_code(z)] = n;
    }
  } else if (key.starts_with("hosts.")) {
    const auto zone = parse_zone(key.substr(6));
    if (!zone) throw ConfigError("unknown zone in key '" + std::string(key) + "'");
    cfg.hosts_per_zone[zone_code(*zone)] = integer();
  } else if (key == "max_steps") {
    cfg.max_steps = integer();
  } else if (key == "red_move_prob") {
    cfg.red_move_prob = real();
  } else if (key == "red_spread_prob") {
    cfg.red_spread_prob = real();
  } else if (key == "greens_per_zone") {
    cfg.greens_per_zone = integer();
  } else if (key == "green_local_work_prob") {
    cfg.green_local_work_prob = real();
  } else if (key == "phishing_prob") {
    cfg.phishing_prob = real();
  } else if (key == "monitor_detect_prob") {
    cfg.monitor_detect_prob = real();
  } else if (key == "false_alarm_prob") {
    cfg.false_alarm_prob = real();
  } else if (key == "remove_entrench_limit") {
    cfg.remove_entrench_limit = integer();
  } else if (key.starts_with("reward.")) {
    // reward.<Category>.<Kind>, e.g. reward.HQ.RedImpactOrAccess = -3
    const auto rest = key.substr(7);
    const auto dot = rest.find('.');
    const auto category = parse_category(rest.substr(0, dot));
    const auto kind = dot == std::string_view::npos ? std::nullopt : parse_penalty_kind(rest.substr(dot + 1));
    if (!category || !kind) throw ConfigError("unknown reward key '" + std::string(key) + "'");
    try {
      cfg.rewards.set(*category, *kind, real());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string(key) + ": " + e.what());
    }
  } else {
    return false;
  }
  return true;
}

inline EnvConfig env_config_from(const KeyValues& kv) {
  EnvConfig cfg;
  for (const auto& [key, value] : kv) {
    if (!apply_env_setting(cfg, key, value)) throw ConfigError("unknown environment key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

}  // namespace cybermarl::env

#endif  // CYBERMARL_ENV_CONFIG_HPP_
