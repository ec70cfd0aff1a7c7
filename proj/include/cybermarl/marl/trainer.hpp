// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_MARL_TRAINER_HPP_
#define CYBERMARL_MARL_TRAINER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "cybermarl/env/config.hpp"
#include "cybermarl/env/simulator.hpp"
#include "cybermarl/marl/advantage.hpp"
#include "cybermarl/marl/agent.hpp"
#include "cybermarl/marl/config.hpp"
#include "cybermarl/marl/rollout.hpp"
#include "cybermarl/marl/update.hpp"
#include "cybermarl/random.hpp"

namespace cybermarl::marl {

/// Observation points for tests and diagnostics; all optional.
struct TrainHooks {
  std::function<void(const RolloutBuffer&)> before_update;
  std::function<void(const RolloutBuffer&)> after_update;
  std::function<void(std::size_t agent, double max_ratio_deviation)> ppo_first_ratio;
};

struct TrainResult {
  std::vector<double> episode_returns;
  std::vector<AgentSpec> agents;
  std::size_t updates = 0;
};

/// Seed streams of one training run.
struct RunSeeds {
  std::uint64_t params;
  std::uint64_t episodes;
  std::uint64_t actions;

  static RunSeeds from(std::uint64_t seed) { return {derive_seed(seed, 1), derive_seed(seed, 2), derive_seed(seed, 3)}; }
};

/// Critic then actor for every agent, with advantages computed from the
/// pre-update critic.
inline void update_agents(std::vector<AgentSpec>& agents, const RolloutBuffer& buffer, const TrainerConfig& cfg,
                          const TrainHooks& hooks = {}) {
  const auto mode = critic_mode(cfg.algorithm);
  for (auto& agent : agents) {
    const auto adv = compute_advantages(buffer, agent.critic, agent.agent_id, mode, cfg.advantage_mode, cfg.gamma,
                                        cfg.normalize_advantage);
    const nn::Matrix inputs = critic_inputs(buffer, agent.agent_id, mode);
    const auto batch = make_policy_batch(buffer, agent.agent_id, adv.advantages);
    if (is_ppo(cfg.algorithm)) {
      for (int e = 0; e < cfg.ppo_epochs; ++e) critic_update(agent.critic, agent.critic_opt, inputs, adv.targets, cfg.lr);
      const auto stats = ppo_actor_update(agent.actor, agent.actor_opt, batch, cfg.clip, cfg.ppo_epochs, cfg.lr);
      if (hooks.ppo_first_ratio) hooks.ppo_first_ratio(agent.agent_id, stats.first_max_ratio_deviation);
    } else {
      critic_update(agent.critic, agent.critic_opt, inputs, adv.targets, cfg.lr);
      a2c_actor_update(agent.actor, agent.actor_opt, batch, cfg.lr);
    }
  }
}

/// Collects with the current actors and updates whenever the buffer fills,
/// until `cfg.episodes` episodes have finished. A partially filled buffer at
/// the end of the budget is dropped.
inline TrainResult train(const TrainerConfig& cfg, const env::EnvConfig& env_cfg, const TrainHooks& hooks = {}) {
  cfg.validate();
  const env::CyberDefenseEnv env(env_cfg);
  const auto seeds = RunSeeds::from(cfg.seed);

  TrainResult result;
  result.agents = make_agents(env, critic_mode(cfg.algorithm), cfg.hidden, seeds.params, cfg.actor_output_scale);
  RolloutCollector collector(env, seeds.episodes);
  Rng action_rng(seeds.actions);
  RolloutBuffer buffer(cfg.steps_to_update);

  while (collector.episodes_completed() < cfg.episodes) {
    collector.collect(buffer, ActorPolicy{result.agents}, action_rng, cfg.episodes);
    if (!buffer.full()) break;
    if (hooks.before_update) hooks.before_update(buffer);
    update_agents(result.agents, buffer, cfg, hooks);
    ++result.updates;
    buffer.clear();
    if (hooks.after_update) hooks.after_update(buffer);
  }
  result.episode_returns = collector.episode_returns();
  return result;
}

/// Uniform-over-legal-actions control policy with the same episode seeding
/// as train().
inline std::vector<double> run_random_policy(const env::EnvConfig& env_cfg, int episodes, std::uint64_t seed) {
  const env::CyberDefenseEnv env(env_cfg);
  const auto seeds = RunSeeds::from(seed);
  UniformPolicy policy;
  for (std::size_t a = 0; a < env.agent_count(); ++a) policy.action_sizes.push_back(env.action_size(a));
  RolloutCollector collector(env, seeds.episodes);
  Rng action_rng(seeds.actions);
  RolloutBuffer buffer(static_cast<std::size_t>(env_cfg.max_steps));
  while (collector.episodes_completed() < episodes) {
    collector.collect(buffer, policy, action_rng, episodes);
    buffer.clear();
  }
  return collector.episode_returns();
}

}  // namespace cybermarl::marl

#endif  // CYBERMARL_MARL_TRAINER_HPP_
