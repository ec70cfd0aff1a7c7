// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_HARNESS_CLI_HPP_
#define CYBERMARL_HARNESS_CLI_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cybermarl/harness/experiment.hpp"
#include "cybermarl/kv_config.hpp"

namespace cybermarl::harness {

/// Raw `train` flags before they are layered over the config file.
struct TrainFlags {
  std::optional<std::string> algo;
  std::optional<int> runs;
  std::optional<int> episodes;
  std::optional<int> max_steps;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> window;
  std::optional<unsigned> threads;
  std::optional<std::string> config_file;
  /// Extra `key=value` settings, same keys as the config file.
  std::vector<std::string> settings;
};

inline void add_train_options(CLI::App& app, TrainFlags& f) {
  app.add_option("--algo", f.algo, "iac|maac|ippo|mappo|random, comma-separated, or 'all'");
  app.add_option("--runs", f.runs, "independent runs per algorithm (default 25)");
  app.add_option("--episodes", f.episodes, "episodes per run (default 1000)");
  app.add_option("--max-steps", f.max_steps, "steps per episode (default 50)");
  app.add_option("--seed", f.seed, "base seed; run r uses seed + r");
  app.add_option("--out", f.out, "output directory");
  app.add_option("--window", f.window, "smoothing window of the curve (default 20)");
  app.add_option("--threads", f.threads, "worker threads, 0 = all cores");
  app.add_option("--config", f.config_file, "flat key = value file");
  app.add_option("--set", f.settings, "extra key=value override, repeatable");
}

/// Defaults, then the config file, then command-line flags.
inline ExperimentConfig resolve_config(const TrainFlags& f) {
  ExperimentConfig cfg;
  if (f.config_file) apply_experiment_settings(cfg, read_key_values(*f.config_file));
  for (const auto& s : f.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
    auto trim = [](std::string t) {
      t.erase(0, t.find_first_not_of(" \t"));
      t.erase(t.find_last_not_of(" \t") + 1);
      return t;
    };
    apply_experiment_setting(cfg, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }
  if (f.algo) cfg.algorithms = parse_algorithm_list(*f.algo);
  if (f.runs) cfg.runs = *f.runs;
  if (f.episodes) cfg.episodes = *f.episodes;
  if (f.max_steps) cfg.env.max_steps = *f.max_steps;
  if (f.seed) cfg.base_seed = *f.seed;
  if (f.out) cfg.out_dir = *f.out;
  if (f.window) cfg.window = *f.window;
  if (f.threads) cfg.threads = *f.threads;
  cfg.validate();
  return cfg;
}

/// `args` are the `train` arguments without program or subcommand name.
inline ExperimentConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"train"};
  TrainFlags flags;
  add_train_options(app, flags);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  return resolve_config(flags);
}

}  // namespace cybermarl::harness

#endif  // CYBERMARL_HARNESS_CLI_HPP_
