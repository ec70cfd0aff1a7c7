// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_MARL_ADVANTAGE_HPP_
#define CYBERMARL_MARL_ADVANTAGE_HPP_

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "cybermarl/marl/config.hpp"
#include "cybermarl/marl/rollout.hpp"
#include "cybermarl/nn/mlp.hpp"

namespace cybermarl::marl {

/// y_t = r_t + gamma * V(x'_t), with V(x') := 0 on terminal transitions.
inline std::vector<double> td_targets(std::span<const double> rewards, std::span<const double> next_values,
                                      const std::vector<bool>& dones, double gamma) {
  if (rewards.size() != next_values.size() || rewards.size() != dones.size()) {
    throw std::invalid_argument("td_targets: misaligned inputs");
  }
  std::vector<double> y(rewards.size());
  for (std::size_t t = 0; t < rewards.size(); ++t) y[t] = rewards[t] + (dones[t] ? 0.0 : gamma * next_values[t]);
  return y;
}

/// G_t = r_t + gamma * G_{t+1}, restarting after every done marker. When the
/// final transition is not terminal the tail bootstraps from `bootstrap_value`.
inline std::vector<double> discounted_returns(std::span<const double> rewards, const std::vector<bool>& dones,
                                              double gamma, double bootstrap_value = 0.0) {
  if (rewards.size() != dones.size()) throw std::invalid_argument("discounted_returns: misaligned inputs");
  std::vector<double> g(rewards.size());
  double next = bootstrap_value;
  for (std::size_t t = rewards.size(); t-- > 0;) {
    if (dones[t]) next = 0.0;
    g[t] = rewards[t] + gamma * next;
    next = g[t];
  }
  return g;
}

struct AdvantageBatch {
  std::vector<double> targets;
  std::vector<double> values;
  std::vector<double> advantages;
};

/// Critic inputs of the buffer as columns.
inline nn::Matrix critic_inputs(const RolloutBuffer& buffer, std::size_t agent, CriticMode mode, bool next = false) {
  if (buffer.empty()) throw std::invalid_argument("empty rollout buffer");
  const auto dim = buffer[0].critic_input(agent, mode).size();
  nn::Matrix x(dim, static_cast<Eigen::Index>(buffer.size()));
  for (std::size_t j = 0; j < buffer.size(); ++j) {
    x.col(static_cast<Eigen::Index>(j)) =
        next ? buffer[j].next_critic_input(agent, mode) : buffer[j].critic_input(agent, mode);
  }
  return x;
}

inline std::vector<double> critic_values(const nn::MlpParams& critic, const nn::Matrix& inputs) {
  const nn::Matrix v = nn::forward(critic, inputs).output;
  return {v.data(), v.data() + v.size()};
}

/// Per-transition TD targets from the buffer and the agent's critic.
inline std::vector<double> td_targets(const RolloutBuffer& buffer, const nn::MlpParams& critic, std::size_t agent,
                                      CriticMode mode, double gamma) {
  const auto next_values = critic_values(critic, critic_inputs(buffer, agent, mode, true));
  const auto rewards = buffer.rewards();
  return td_targets(rewards, next_values, buffer.dones(), gamma);
}

/// Targets, baseline values and advantages (A = target - V) for one agent.
/// With `normalize` the advantages are standardized afterwards.
inline AdvantageBatch compute_advantages(const RolloutBuffer& buffer, const nn::MlpParams& critic, std::size_t agent,
                                         CriticMode mode, AdvantageMode adv_mode, double gamma,
                                         bool normalize = false) {
  AdvantageBatch out;
  out.values = critic_values(critic, critic_inputs(buffer, agent, mode));
  const auto rewards = buffer.rewards();
  const auto dones = buffer.dones();
  if (adv_mode == AdvantageMode::Td) {
    out.targets = td_targets(buffer, critic, agent, mode, gamma);
  } else {
    double bootstrap = 0.0;
    const auto& last = buffer[buffer.size() - 1];
    if (!last.done) {
      bootstrap = nn::forward(critic, last.next_critic_input(agent, mode)).output(0, 0);
    }
    out.targets = discounted_returns(rewards, dones, gamma, bootstrap);
  }
  out.advantages.resize(out.targets.size());
  for (std::size_t t = 0; t < out.targets.size(); ++t) out.advantages[t] = out.targets[t] - out.values[t];
  if (normalize && out.advantages.size() > 1) {
    double mean = 0.0;
    for (double a : out.advantages) mean += a;
    mean /= static_cast<double>(out.advantages.size());
    double var = 0.0;
    for (double a : out.advantages) var += (a - mean) * (a - mean);
    const double sd = std::sqrt(var / static_cast<double>(out.advantages.size()));
    for (double& a : out.advantages) a = (a - mean) / (sd + 1e-8);
  }
  return out;
}

}  // namespace cybermarl::marl

#endif  // CYBERMARL_MARL_ADVANTAGE_HPP_
