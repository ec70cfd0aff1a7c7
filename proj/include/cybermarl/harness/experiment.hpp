// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_HARNESS_EXPERIMENT_HPP_
#define CYBERMARL_HARNESS_EXPERIMENT_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "cybermarl/env/config.hpp"
#include "cybermarl/harness/metrics.hpp"
#include "cybermarl/kv_config.hpp"
#include "cybermarl/marl/config.hpp"
#include "cybermarl/marl/trainer.hpp"

#ifndef CYBERMARL_VERSION
#define CYBERMARL_VERSION "0.0.0"
#endif

namespace cybermarl::harness {

inline constexpr std::string_view kRandomAlgorithm = "random";

inline bool is_known_algorithm(std::string_view name) {
  return name == kRandomAlgorithm || marl::parse_algorithm(name).has_value();
}

struct ExperimentConfig {
  std::vector<std::string> algorithms = {"iac", "maac", "ippo", "mappo"};
  int runs = 25;
  int episodes = 1000;
  std::uint64_t base_seed = 0;
  std::string out_dir = "results";
  std::size_t window = 20;
  /// 0 = one worker per hardware thread.
  unsigned threads = 0;
  /// max_steps lives here.
  env::EnvConfig env;
  marl::TrainerOverrides trainer;

  void validate() const {
    if (algorithms.empty()) throw ConfigError("at least one algorithm is required");
    for (const auto& a : algorithms) {
      if (!is_known_algorithm(a)) throw ConfigError("unknown algorithm '" + a + "'");
    }
    if (runs < 1) throw ConfigError("runs must be >= 1");
    if (episodes < 1) throw ConfigError("episodes must be >= 1");
    if (window < 1) throw ConfigError("window must be >= 1");
    env.validate();
    for (const auto& a : algorithms) {
      if (auto alg = marl::parse_algorithm(a)) trainer_config(*alg, 0).validate();
    }
  }

  std::uint64_t run_seed(int run) const { return base_seed + static_cast<std::uint64_t>(run); }

  marl::TrainerConfig trainer_config(marl::Algorithm a, int run) const {
    auto c = marl::TrainerConfig::defaults_for(a);
    trainer.apply(c);
    c.seed = run_seed(run);
    c.episodes = episodes;
    return c;
  }
};

/// Comma-separated list; "all" expands to the four learners.
inline std::vector<std::string> parse_algorithm_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item(text.substr(pos, comma - pos));
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item == "all") {
      for (const auto* a : {"iac", "maac", "ippo", "mappo"}) out.emplace_back(a);
    } else if (!item.empty()) {
      if (!is_known_algorithm(item)) throw ConfigError("unknown algorithm '" + item + "'");
      out.push_back(std::move(item));
    }
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("empty algorithm list");
  return out;
}

/// Applies one flat key-value setting. Unknown keys are an error.
inline void apply_experiment_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "algorithm" || key == "algorithms" || key == "algo") {
    cfg.algorithms = parse_algorithm_list(value);
  } else if (key == "runs") {
    cfg.runs = static_cast<int>(parse_integer(key, value));
  } else if (key == "episodes") {
    cfg.episodes = static_cast<int>(parse_integer(key, value));
  } else if (key == "seed") {
    const auto s = parse_integer(key, value);
    if (s < 0) throw ConfigError("seed must be non-negative");
    cfg.base_seed = static_cast<std::uint64_t>(s);
  } else if (key == "out") {
    cfg.out_dir = std::string(value);
  } else if (key == "window") {
    const auto w = parse_integer(key, value);
    if (w < 1) throw ConfigError("window must be >= 1");
    cfg.window = static_cast<std::size_t>(w);
  } else if (key == "threads") {
    const auto t = parse_integer(key, value);
    if (t < 0) throw ConfigError("threads must be >= 0");
    cfg.threads = static_cast<unsigned>(t);
  } else if (marl::apply_trainer_setting(cfg.trainer, key, value)) {
  } else if (env::apply_env_setting(cfg.env, key, value)) {
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

inline void apply_experiment_settings(ExperimentConfig& cfg, const KeyValues& kv) {
  for (const auto& [k, v] : kv) apply_experiment_setting(cfg, k, v);
}

/// Returns per run in (algorithm, run) order. Runs are spread over worker
/// threads; each run owns its env and parameters.
inline MetricsTable run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  struct Job {
    std::string algorithm;
    int run;
    std::vector<double> returns;
    std::exception_ptr error;
  };
  std::vector<Job> jobs;
  for (const auto& a : cfg.algorithms) {
    for (int r = 0; r < cfg.runs; ++r) jobs.push_back({a, r, {}, nullptr});
  }

  auto execute = [&cfg](Job& job) {
    try {
      if (job.algorithm == kRandomAlgorithm) {
        job.returns = marl::run_random_policy(cfg.env, cfg.episodes, cfg.run_seed(job.run));
      } else {
        const auto tc = cfg.trainer_config(*marl::parse_algorithm(job.algorithm), job.run);
        job.returns = marl::train(tc, cfg.env).episode_returns;
      }
    } catch (...) {
      job.error = std::current_exception();
    }
  };

  unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) execute(jobs[i]);
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  MetricsTable table;
  table.rows.reserve(jobs.size() * static_cast<std::size_t>(cfg.episodes));
  for (auto& job : jobs) {
    if (job.error) {
      try {
        std::rethrow_exception(job.error);
      } catch (const std::exception& e) {
        throw std::runtime_error(job.algorithm + " run " + std::to_string(job.run) + " failed: " + e.what());
      }
    }
    for (std::size_t e = 0; e < job.returns.size(); ++e) {
      table.rows.push_back({job.algorithm, job.run, static_cast<int>(e), job.returns[e]});
    }
  }
  return table;
}

/// Same schema as run_experiment, uniform legal actions only.
inline MetricsTable random_baseline(ExperimentConfig cfg) {
  cfg.algorithms = {std::string(kRandomAlgorithm)};
  return run_experiment(cfg);
}

inline nlohmann::ordered_json experiment_manifest(const ExperimentConfig& cfg) {
  using nlohmann::ordered_json;
  ordered_json env;
  env["layout"] = env::layout_name(cfg.env.layout);
  ordered_json hosts = ordered_json::object();
  for (auto z : env::kAllZones) hosts[std::string(env::zone_name(z))] = cfg.env.hosts_per_zone[env::zone_code(z)];
  env["hosts_per_zone"] = hosts;
  env["max_steps"] = cfg.env.max_steps;
  env["red_move_prob"] = cfg.env.red_move_prob;
  env["red_spread_prob"] = cfg.env.red_spread_prob;
  env["greens_per_zone"] = cfg.env.greens_per_zone;
  env["green_local_work_prob"] = cfg.env.green_local_work_prob;
  env["phishing_prob"] = cfg.env.phishing_prob;
  env["monitor_detect_prob"] = cfg.env.monitor_detect_prob;
  env["false_alarm_prob"] = cfg.env.false_alarm_prob;
  env["remove_entrench_limit"] = cfg.env.remove_entrench_limit;
  ordered_json rewards = ordered_json::object();
  for (std::size_t ci = 0; ci < env::kRewardCategoryCount; ++ci) {
    const auto c = static_cast<env::RewardCategory>(ci);
    ordered_json row = ordered_json::object();
    for (std::size_t ki = 0; ki < env::kPenaltyKindCount; ++ki) {
      const auto k = static_cast<env::PenaltyKind>(ki);
      row[std::string(env::penalty_kind_name(k))] = cfg.env.rewards.penalty(c, k);
    }
    rewards[std::string(env::category_name(c))] = row;
  }
  env["rewards"] = rewards;

  ordered_json trainers = ordered_json::object();
  for (const auto& a : cfg.algorithms) {
    auto alg = marl::parse_algorithm(a);
    if (!alg) continue;
    const auto tc = cfg.trainer_config(*alg, 0);
    ordered_json t;
    t["gamma"] = tc.gamma;
    t["lr"] = tc.lr;
    t["clip"] = tc.clip;
    t["epochs"] = tc.ppo_epochs;
    t["steps_to_update"] = tc.steps_to_update;
    t["advantage_mode"] = marl::advantage_mode_name(tc.advantage_mode);
    t["normalize_advantage"] = tc.normalize_advantage;
    t["hidden"] = tc.hidden;
    trainers[a] = t;
  }

  ordered_json m;
  m["algorithms"] = cfg.algorithms;
  m["runs"] = cfg.runs;
  m["episodes"] = cfg.episodes;
  m["base_seed"] = cfg.base_seed;
  m["seed_rule"] = "base_seed + run";
  m["window"] = cfg.window;
  m["env"] = env;
  m["trainers"] = trainers;
  m["versions"] = {
      {"cybermarl", CYBERMARL_VERSION},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
      {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                            std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                            std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
      {"cxx_standard", static_cast<long>(__cplusplus)},
  };
  return m;
}

inline void write_manifest(const ExperimentConfig& cfg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << experiment_manifest(cfg).dump(2) << '\n';
}

}  // namespace cybermarl::harness

#endif  // CYBERMARL_HARNESS_EXPERIMENT_HPP_
