// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: train, plot, simulate.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cybermarl/env/config.hpp"
#include "cybermarl/env/event_log.hpp"
#include "cybermarl/env/simulator.hpp"
#include "cybermarl/harness/cli.hpp"
#include "cybermarl/harness/experiment.hpp"
#include "cybermarl/harness/metrics.hpp"
#include "cybermarl/harness/plot.hpp"
#include "cybermarl/random.hpp"

namespace {

namespace fs = std::filesystem;
using namespace cybermarl;

int run_train(const harness::TrainFlags& flags, bool quiet) {
  const auto cfg = harness::resolve_config(flags);
  fs::create_directories(cfg.out_dir);
  const auto table = harness::run_experiment(cfg);
  const auto dir = fs::path(cfg.out_dir);
  harness::write_metrics_csv(table, (dir / "metrics.csv").string());
  harness::write_manifest(cfg, (dir / "manifest.json").string());
  harness::render_training_curve(table, cfg.window, (dir / "curve.svg").string());
  if (!quiet) {
    for (const auto& a : table.algorithms()) {
      std::cout << a << ": mean return over last " << std::min(50, cfg.episodes)
                << " episodes = " << table.tail_mean(a, 50) << '\n';
    }
    std::cout << "wrote " << (dir / "metrics.csv").string() << ", manifest.json, curve.svg\n";
  }
  return 0;
}

int run_plot(const std::string& in, const std::string& out, std::size_t window) {
  harness::render_training_curve(harness::read_metrics_csv(in), window, out);
  return 0;
}

// Uniform legal actions; one JSON line per step.
int run_simulate(std::uint64_t seed, int episodes, const std::optional<std::string>& config,
                 const std::vector<std::string>& settings, const std::string& out_path) {
  env::EnvConfig cfg;
  if (config) {
    for (const auto& [k, v] : read_key_values(*config)) {
      if (!env::apply_env_setting(cfg, k, v)) throw ConfigError("unknown environment key '" + k + "'");
    }
  }
  for (const auto& s : settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || !env::apply_env_setting(cfg, s.substr(0, eq), s.substr(eq + 1))) {
      throw ConfigError("bad environment setting '" + s + "'");
    }
  }
  const env::CyberDefenseEnv environment(cfg);
  std::ofstream file;
  if (out_path != "-") {
    file.open(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  }
  std::ostream& out = out_path == "-" ? std::cout : file;
  Rng policy_rng(derive_seed(seed, 0));
  for (int ep = 0; ep < episodes; ++ep) {
    auto state = environment.reset(derive_seed(seed, static_cast<std::uint64_t>(ep) + 1)).state;
    while (!state.done) {
      std::vector<std::size_t> joint;
      for (std::size_t a = 0; a < environment.agent_count(); ++a) {
        const auto mask = environment.legal_action_mask(state, a);
        std::vector<std::size_t> legal;
        for (std::size_t i = 0; i < mask.size(); ++i) {
          if (mask[i]) legal.push_back(i);
        }
        joint.push_back(legal[draw_index(policy_rng, legal.size())]);
      }
      const auto result = environment.step(state, joint);
      env::write_event_line(out, {state.step, result.events, result.reward});
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cybermarl: multi-agent cyber defense training"};
  app.set_version_flag("--version", std::string(CYBERMARL_VERSION));
  app.require_subcommand(1);

  auto* train = app.add_subcommand("train", "train agents over seeded runs and write metrics.csv, manifest.json, curve.svg");
  harness::TrainFlags train_flags;
  bool quiet = false;
  harness::add_train_options(*train, train_flags);
  train->add_flag("--quiet", quiet, "no summary on stdout");

  auto* plot = app.add_subcommand("plot", "render a training-curve SVG from a metrics CSV");
  std::string plot_in, plot_out;
  std::size_t plot_window = 20;
  plot->add_option("--in", plot_in, "metrics CSV")->required();
  plot->add_option("--out", plot_out, "SVG path")->required();
  plot->add_option("--window", plot_window, "moving-average window")->check(CLI::PositiveNumber);

  auto* simulate = app.add_subcommand("simulate", "play uniform legal actions and print the per-step event log");
  std::uint64_t sim_seed = 0;
  int sim_episodes = 1;
  std::optional<std::string> sim_config;
  std::vector<std::string> sim_settings;
  std::string sim_out = "-";
  simulate->add_option("--seed", sim_seed, "seed");
  simulate->add_option("--episodes", sim_episodes, "episodes")->check(CLI::PositiveNumber);
  simulate->add_option("--config", sim_config, "environment key = value file");
  simulate->add_option("--set", sim_settings, "environment key=value override, repeatable");
  simulate->add_option("--out", sim_out, "JSON-lines output, '-' for stdout");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*train) return run_train(train_flags, quiet);
    if (*plot) return run_plot(plot_in, plot_out, plot_window);
    if (*simulate) return run_simulate(sim_seed, sim_episodes, sim_config, sim_settings, sim_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
