// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_MARL_CONFIG_HPP_
#define CYBERMARL_MARL_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cybermarl/kv_config.hpp"

namespace cybermarl::marl {

enum class Algorithm { Iac, Maac, Ippo, Mappo };

enum class AdvantageMode {
  /// One-step TD error, y = r + gamma V(x').
  Td,
  /// Discounted return-to-go minus V(x).
  EmpiricalReturn,
};

enum class CriticMode { Independent, Centralized };

constexpr bool is_ppo(Algorithm a) noexcept { return a == Algorithm::Ippo || a == Algorithm::Mappo; }
constexpr bool is_centralized(Algorithm a) noexcept { return a == Algorithm::Maac || a == Algorithm::Mappo; }
constexpr CriticMode critic_mode(Algorithm a) noexcept {
  return is_centralized(a) ? CriticMode::Centralized : CriticMode::Independent;
}

constexpr std::string_view algorithm_name(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Iac: return "iac";
    case Algorithm::Maac: return "maac";
    case Algorithm::Ippo: return "ippo";
    case Algorithm::Mappo: return "mappo";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::Iac, Algorithm::Maac, Algorithm::Ippo, Algorithm::Mappo}) {
    if (algorithm_name(a) == name) return a;
  }
  return std::nullopt;
}

constexpr std::string_view advantage_mode_name(AdvantageMode m) noexcept {
  return m == AdvantageMode::Td ? "td" : "empirical_return";
}

struct TrainerConfig {
  Algorithm algorithm = Algorithm::Iac;
  double gamma = 0.99;
  double lr = 0.05;
  double clip = 0.2;
  int ppo_epochs = 4;
  std::size_t steps_to_update = 50;
  AdvantageMode advantage_mode = AdvantageMode::EmpiricalReturn;
  bool normalize_advantage = false;
  std::uint64_t seed = 0;
  int episodes = 1000;
  std::vector<std::size_t> hidden = {64, 64};
  double actor_output_scale = 1.0;

  /// Actor-critic preset (lr 0.05, gamma 0.99, 50 steps per update) for IAC and
  /// MAAC; PPO preset (lr 1e-4, gamma 0.95, clip 0.2, 100 steps) for IPPO and MAPPO.
  static TrainerConfig defaults_for(Algorithm a) {
    TrainerConfig c;
    c.algorithm = a;
    if (is_ppo(a)) {
      c.lr = 1e-4;
      c.gamma = 0.95;
      c.steps_to_update = 100;
    }
    return c;
  }

  void validate() const {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in [0, 1]");
    if (!(lr > 0.0)) throw ConfigError("lr must be positive");
    if (!(clip > 0.0 && clip < 1.0)) throw ConfigError("clip must lie in (0, 1)");
    if (ppo_epochs < 1) throw ConfigError("epochs must be >= 1");
    if (steps_to_update < 1) throw ConfigError("steps_to_update must be >= 1");
    if (episodes < 1) throw ConfigError("episodes must be >= 1");
    for (auto h : hidden) {
      if (h < 1) throw ConfigError("hidden layer widths must be >= 1");
    }
  }
};

/// Optional per-key overrides applied on top of an algorithm's preset.
struct TrainerOverrides {
  std::optional<double> gamma;
  std::optional<double> lr;
  std::optional<double> clip;
  std::optional<int> epochs;
  std::optional<std::size_t> steps_to_update;
  std::optional<AdvantageMode> advantage_mode;
  std::optional<bool> normalize_advantage;

  void apply(TrainerConfig& c) const {
    if (gamma) c.gamma = *gamma;
    if (lr) c.lr = *lr;
    if (clip) c.clip = *clip;
    if (epochs) c.ppo_epochs = *epochs;
    if (steps_to_update) c.steps_to_update = *steps_to_update;
    if (advantage_mode) c.advantage_mode = *advantage_mode;
    if (normalize_advantage) c.normalize_advantage = *normalize_advantage;
  }
};

/// Returns false when `key` is not a trainer key.
inline bool apply_trainer_setting(TrainerOverrides& o, std::string_view key, std::string_view value) {
  if (key == "gamma") {
    o.gamma = parse_double(key, value);
  } else if (key == "lr") {
    o.lr = parse_double(key, value);
  } else if (key == "clip") {
    o.clip = parse_double(key, value);
  } else if (key == "epochs") {
    o.epochs = static_cast<int>(parse_integer(key, value));
  } else if (key == "steps_to_update") {
    const auto n = parse_integer(key, value);
    if (n < 1) throw ConfigError("steps_to_update must be >= 1");
    o.steps_to_update = static_cast<std::size_t>(n);
  } else if (key == "advantage_mode") {
    if (value == "td") o.advantage_mode = AdvantageMode::Td;
    else if (value == "empirical_return") o.advantage_mode = AdvantageMode::EmpiricalReturn;
    else throw ConfigError("advantage_mode must be 'td' or 'empirical_return'");
  } else if (key == "normalize_advantage") {
    o.normalize_advantage = parse_bool(key, value);
  } else {
    return false;
  }
  return true;
}

}  // namespace cybermarl::marl

#endif  // CYBERMARL_MARL_CONFIG_HPP_
