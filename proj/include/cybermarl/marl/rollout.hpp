// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_MARL_ROLLOUT_HPP_
#define CYBERMARL_MARL_ROLLOUT_HPP_

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cybermarl/env/event_log.hpp"
#include "cybermarl/env/simulator.hpp"
#include "cybermarl/marl/agent.hpp"
#include "cybermarl/nn/categorical.hpp"
#include "cybermarl/random.hpp"

namespace cybermarl::marl {

struct Transition {
  std::vector<nn::Vector> obs;
  nn::Vector joint_obs;
  std::vector<std::size_t> actions;
  std::vector<double> log_probs;  // behaviour policy, at collection time
  std::vector<env::ActionMask> masks;
  double reward = 0.0;
  std::vector<nn::Vector> next_obs;
  nn::Vector next_joint_obs;
  bool done = false;

  const nn::Vector& critic_input(std::size_t agent, CriticMode mode) const {
    return mode == CriticMode::Centralized ? joint_obs : obs.at(agent);
  }
  const nn::Vector& next_critic_input(std::size_t agent, CriticMode mode) const {
    return mode == CriticMode::Centralized ? next_joint_obs : next_obs.at(agent);
  }
};

/// On-policy storage, emptied after every update.
class RolloutBuffer {
 public:
  explicit RolloutBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ < 1) throw std::invalid_argument("rollout capacity must be >= 1");
    items_.reserve(capacity_);
  }

  void push(Transition t) {
    if (full()) throw std::logic_error("rollout buffer is full");
    items_.push_back(std::move(t));
  }
  void clear() noexcept { items_.clear(); }

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  bool full() const noexcept { return items_.size() >= capacity_; }

  const Transition& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  std::vector<double> rewards() const {
    std::vector<double> r;
    for (const auto& t : items_) r.push_back(t.reward);
    return r;
  }
  std::vector<bool> dones() const {
    std::vector<bool> d;
    for (const auto& t : items_) d.push_back(t.done);
    return d;
  }

 private:
  std::size_t capacity_;
  std::vector<Transition> items_;
};

/// Maps an agent's local observation to action logits.
template <typename P>
concept Policy = requires(const P& p, std::size_t agent, const nn::Vector& obs) {
  { p.logits(agent, obs) } -> std::convertible_to<nn::Vector>;
};

struct ActorPolicy {
  const std::vector<AgentSpec>& agents;
  nn::Vector logits(std::size_t agent, const nn::Vector& obs) const {
    return nn::forward(agents[agent].actor, obs).output.col(0);
  }
};

/// Zero logits: uniform over the legal actions once masked.
struct UniformPolicy {
  std::vector<std::size_t> action_sizes;
  nn::Vector logits(std::size_t agent, const nn::Vector&) const {
    return nn::Vector::Zero(static_cast<Eigen::Index>(action_sizes[agent]));
  }
};

/// Drives the environment across episode boundaries, keeping the current
/// episode and the per-episode undiscounted shared returns. Episode k is
/// reset with derive_seed(seed, k).
class RolloutCollector {
 public:
  using EventSink = std::function<void(const env::StepRecord&)>;

  RolloutCollector(const env::CyberDefenseEnv& env, std::uint64_t seed) : env_(&env), seed_(seed) {}

  void set_event_sink(EventSink sink) { sink_ = std::move(sink); }

  /// Steps until the buffer is full or `episode_limit` episodes have finished.
  template <Policy P, UniformSource R>
  void collect(RolloutBuffer& buffer, const P& policy, R& rng, std::optional<int> episode_limit = std::nullopt) {
    const std::size_t n_agents = env_->agent_count();
    while (!buffer.full() && !(episode_limit && episodes_completed() >= *episode_limit)) {
      if (!state_) begin_episode();
      Transition t;
      t.obs = obs_;
      t.joint_obs = make_critic_input(obs_, CriticMode::Centralized, 0);
      for (std::size_t a = 0; a < n_agents; ++a) {
        auto mask = env_->legal_action_mask(*state_, a);
        const nn::Vector logits = policy.logits(a, obs_[a]);
        const nn::Vector log_probs = nn::masked_log_softmax(logits, mask);
        const std::size_t choice = nn::sample_categorical(nn::Vector(log_probs.array().exp()), rng);
        t.actions.push_back(choice);
        t.log_probs.push_back(log_probs(static_cast<Eigen::Index>(choice)));
        t.masks.push_back(std::move(mask));
      }
      auto result = env_->step(*state_, t.actions);
      if (sink_) sink_({state_->step, result.events, result.reward});
      obs_ = encodings(result.observations);
      t.reward = result.reward;
      t.next_obs = obs_;
      t.next_joint_obs = make_critic_input(obs_, CriticMode::Centralized, 0);
      t.done = result.done;
      running_return_ += result.reward;
      buffer.push(std::move(t));
      if (result.done) {
        returns_.push_back(running_return_);
        state_.reset();
      }
    }
  }

  int episodes_completed() const noexcept { return static_cast<int>(returns_.size()); }
  const std::vector<double>& episode_returns() const noexcept { return returns_; }
  const std::optional<env::EpisodeState>& state() const noexcept { return state_; }

 private:
  void begin_episode() {
    auto reset = env_->reset(derive_seed(seed_, returns_.size()));
    state_ = std::move(reset.state);
    obs_ = encodings(reset.observations);
    running_return_ = 0.0;
  }

  const env::CyberDefenseEnv* env_;
  std::uint64_t seed_;
  std::optional<env::EpisodeState> state_;
  std::vector<nn::Vector> obs_;
  double running_return_ = 0.0;
  std::vector<double> returns_;
  EventSink sink_;
};

/// Fills a fresh buffer of `capacity` transitions with the agents' actors.
template <UniformSource R>
RolloutBuffer collect_rollout(RolloutCollector& collector, const std::vector<AgentSpec>& agents, std::size_t capacity,
                              R& rng) {
  RolloutBuffer buffer(capacity);
  collector.collect(buffer, ActorPolicy{agents}, rng);
  return buffer;
}

}  // namespace cybermarl::marl

#endif  // CYBERMARL_MARL_ROLLOUT_HPP_
