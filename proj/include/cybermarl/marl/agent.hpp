// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_MARL_AGENT_HPP_
#define CYBERMARL_MARL_AGENT_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cybermarl/env/simulator.hpp"
#include "cybermarl/marl/config.hpp"
#include "cybermarl/nn/adam.hpp"
#include "cybermarl/nn/mlp.hpp"
#include "cybermarl/random.hpp"

namespace cybermarl::marl {

/// One blue agent's learner: its own actor and critic, no sharing.
struct AgentSpec {
  std::size_t agent_id = 0;
  std::size_t obs_dim = 0;
  std::size_t action_dim = 0;
  std::size_t critic_input_dim = 0;
  nn::MlpParams actor;
  nn::MlpParams critic;
  nn::AdamState actor_opt;
  nn::AdamState critic_opt;
};

inline std::vector<std::size_t> layer_dims(std::size_t in, const std::vector<std::size_t>& hidden, std::size_t out) {
  std::vector<std::size_t> dims{in};
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(out);
  return dims;
}

/// Parameter seeds depend only on (seed, agent id), not on the critic mode, so
/// two algorithms started from the same seed share initial actors.
inline std::vector<AgentSpec> make_agents(const env::CyberDefenseEnv& env, CriticMode mode,
                                          const std::vector<std::size_t>& hidden, std::uint64_t seed,
                                          double actor_output_scale = 1.0) {
  std::size_t joint_dim = 0;
  for (std::size_t a = 0; a < env.agent_count(); ++a) joint_dim += env.observation_size(a);

  std::vector<AgentSpec> agents;
  for (std::size_t a = 0; a < env.agent_count(); ++a) {
    AgentSpec spec;
    spec.agent_id = a;
    spec.obs_dim = env.observation_size(a);
    spec.action_dim = env.action_size(a);
    spec.critic_input_dim = mode == CriticMode::Centralized ? joint_dim : spec.obs_dim;
    spec.actor = nn::mlp_init(layer_dims(spec.obs_dim, hidden, spec.action_dim), derive_seed(seed, 2 * a));
    spec.actor.layers.back().weight *= actor_output_scale;
    spec.critic = nn::mlp_init(layer_dims(spec.critic_input_dim, hidden, 1), derive_seed(seed, 2 * a + 1));
    spec.actor_opt = nn::AdamState::for_params(spec.actor);
    spec.critic_opt = nn::AdamState::for_params(spec.critic);
    agents.push_back(std::move(spec));
  }
  return agents;
}

/// Centralized: all encodings concatenated in agent-id order. Independent:
/// the agent's own encoding.
inline nn::Vector make_critic_input(std::span<const nn::Vector> observations, CriticMode mode, std::size_t agent) {
  if (agent >= observations.size()) {
    throw std::invalid_argument("missing observation encoding for agent " + std::to_string(agent));
  }
  if (mode == CriticMode::Independent) return observations[agent];
  Eigen::Index total = 0;
  for (std::size_t a = 0; a < observations.size(); ++a) {
    if (observations[a].size() == 0) {
      throw std::invalid_argument("missing observation encoding for agent " + std::to_string(a));
    }
    total += observations[a].size();
  }
  nn::Vector x(total);
  Eigen::Index offset = 0;
  for (const auto& o : observations) {
    x.segment(offset, o.size()) = o;
    offset += o.size();
  }
  return x;
}

inline nn::Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const nn::Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::vector<nn::Vector> encodings(const std::vector<env::ObservationVector>& obs) {
  std::vector<nn::Vector> out;
  out.reserve(obs.size());
  for (const auto& o : obs) out.push_back(to_vector(o.encoded));
  return out;
}

}  // namespace cybermarl::marl

#endif  // CYBERMARL_MARL_AGENT_HPP_
