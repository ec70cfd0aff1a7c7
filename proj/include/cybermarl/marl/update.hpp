// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_MARL_UPDATE_HPP_
#define CYBERMARL_MARL_UPDATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cybermarl/marl/rollout.hpp"
#include "cybermarl/nn/adam.hpp"
#include "cybermarl/nn/categorical.hpp"
#include "cybermarl/nn/mlp.hpp"

namespace cybermarl::marl {

/// Everything an actor update needs for one agent; columns of `obs` are samples.
struct PolicyBatch {
  nn::Matrix obs;
  std::vector<std::size_t> actions;
  std::vector<env::ActionMask> masks;
  nn::Vector advantages;
  nn::Vector old_log_probs;

  std::size_t size() const noexcept { return actions.size(); }
};

inline PolicyBatch make_policy_batch(const RolloutBuffer& buffer, std::size_t agent,
                                     std::span<const double> advantages) {
  if (buffer.empty()) throw std::invalid_argument("empty rollout buffer");
  if (advantages.size() != buffer.size()) throw std::invalid_argument("advantages not aligned with buffer");
  PolicyBatch b;
  const auto n = static_cast<Eigen::Index>(buffer.size());
  b.obs.resize(buffer[0].obs.at(agent).size(), n);
  b.advantages.resize(n);
  b.old_log_probs.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& t = buffer[static_cast<std::size_t>(j)];
    b.obs.col(j) = t.obs[agent];
    b.actions.push_back(t.actions[agent]);
    b.masks.push_back(t.masks[agent]);
    b.advantages(j) = advantages[static_cast<std::size_t>(j)];
    b.old_log_probs(j) = t.log_probs[agent];
  }
  return b;
}

/// Objective value and its gradient (ascent direction) with respect to the
/// actor parameters.
struct ObjectiveEval {
  double value = 0.0;
  nn::Grads grads;
  double max_ratio_deviation = 0.0;  // max |rho - 1|, PPO only
};

namespace detail {

struct PolicyForward {
  nn::ForwardResult fwd;
  std::vector<nn::Vector> probs;
  nn::Vector log_probs;  // of the stored actions
};

inline PolicyForward policy_forward(const nn::MlpParams& actor, const PolicyBatch& batch) {
  PolicyForward pf{nn::forward(actor, batch.obs), {}, nn::Vector(static_cast<Eigen::Index>(batch.size()))};
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const nn::Vector logits = pf.fwd.output.col(static_cast<Eigen::Index>(j));
    const nn::Vector lp = nn::masked_log_softmax(logits, batch.masks[j]);
    const double chosen = lp(static_cast<Eigen::Index>(batch.actions[j]));
    if (!std::isfinite(chosen)) {
      throw std::domain_error("stored action " + std::to_string(batch.actions[j]) + " has zero probability");
    }
    pf.log_probs(static_cast<Eigen::Index>(j)) = chosen;
    pf.probs.push_back(lp.array().exp());
  }
  return pf;
}

/// Gradient of sum_j weight_j * log pi(a_j | o_j) through the masked softmax.
inline nn::Grads weighted_log_prob_grads(const nn::MlpParams& actor, const PolicyForward& pf, const PolicyBatch& batch,
                                         const nn::Vector& weights) {
  nn::Matrix d_logits(pf.fwd.output.rows(), pf.fwd.output.cols());
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    d_logits.col(col) = -weights(col) * pf.probs[j];
    d_logits(static_cast<Eigen::Index>(batch.actions[j]), col) += weights(col);
  }
  return nn::backward(actor, pf.fwd.cache, d_logits);
}

inline nn::Grads negated(nn::Grads g) {
  for (auto& l : g.layers) {
    l.weight = -l.weight;
    l.bias = -l.bias;
  }
  return g;
}

}  // namespace detail

/// (1/|D|) sum log pi(a|o) * A, advantages held constant.
inline ObjectiveEval a2c_objective(const nn::MlpParams& actor, const PolicyBatch& batch) {
  const auto pf = detail::policy_forward(actor, batch);
  const double n = static_cast<double>(batch.size());
  ObjectiveEval out;
  out.value = pf.log_probs.dot(batch.advantages) / n;
  out.grads = detail::weighted_log_prob_grads(actor, pf, batch, batch.advantages / n);
  return out;
}

/// Clipped surrogate (1/|D|) sum min(rho A, clamp(rho, 1 - clip, 1 + clip) A)
/// with rho = exp(log pi - log pi_old).
inline ObjectiveEval ppo_surrogate(const nn::MlpParams& actor, const PolicyBatch& batch, double clip) {
  const auto pf = detail::policy_forward(actor, batch);
  const double n = static_cast<double>(batch.size());
  ObjectiveEval out;
  nn::Vector weights(static_cast<Eigen::Index>(batch.size()));
  for (Eigen::Index j = 0; j < weights.size(); ++j) {
    const double ratio = std::exp(pf.log_probs(j) - batch.old_log_probs(j));
    if (!std::isfinite(ratio)) throw std::domain_error("non-finite PPO ratio");
    out.max_ratio_deviation = std::max(out.max_ratio_deviation, std::abs(ratio - 1.0));
    const double a = batch.advantages(j);
    const double unclipped = ratio * a;
    const double clipped = std::clamp(ratio, 1.0 - clip, 1.0 + clip) * a;
    out.value += std::min(unclipped, clipped) / n;
    // d(rho)/d(theta) = rho * d(log pi)/d(theta); the clipped branch is flat.
    weights(j) = unclipped <= clipped ? ratio * a / n : 0.0;
  }
  out.grads = detail::weighted_log_prob_grads(actor, pf, batch, weights);
  return out;
}

struct CriticEval {
  double loss = 0.0;
  nn::Grads grads;
};

/// (1/|D|) sum (y - V(x))^2 and its gradient.
inline CriticEval critic_loss(const nn::MlpParams& critic, const nn::Matrix& inputs, std::span<const double> targets) {
  if (static_cast<std::size_t>(inputs.cols()) != targets.size()) {
    throw std::invalid_argument("critic targets not aligned with inputs");
  }
  const auto fwd = nn::forward(critic, inputs);
  const double n = static_cast<double>(targets.size());
  nn::Matrix d_out(1, inputs.cols());
  CriticEval out;
  for (Eigen::Index j = 0; j < inputs.cols(); ++j) {
    const double err = fwd.output(0, j) - targets[static_cast<std::size_t>(j)];
    out.loss += err * err / n;
    d_out(0, j) = 2.0 * err / n;
  }
  if (!std::isfinite(out.loss)) throw std::domain_error("non-finite critic loss");
  out.grads = nn::backward(critic, fwd.cache, d_out);
  return out;
}

/// One Adam step on the critic MSE. Returns the loss before the step.
inline double critic_update(nn::MlpParams& critic, nn::AdamState& opt, const nn::Matrix& inputs,
                            std::span<const double> targets, double lr) {
  auto eval = critic_loss(critic, inputs, targets);
  nn::adam_step(critic, eval.grads, opt, lr);
  return eval.loss;
}

/// One policy-gradient ascent step. Returns the objective before the step.
inline double a2c_actor_update(nn::MlpParams& actor, nn::AdamState& opt, const PolicyBatch& batch, double lr) {
  auto eval = a2c_objective(actor, batch);
  nn::adam_step(actor, detail::negated(std::move(eval.grads)), opt, lr);
  return eval.value;
}

struct PpoUpdateStats {
  double first_objective = 0.0;
  double first_max_ratio_deviation = 0.0;
  double last_objective = 0.0;
};

/// `epochs` full-batch ascent steps on the clipped surrogate.
inline PpoUpdateStats ppo_actor_update(nn::MlpParams& actor, nn::AdamState& opt, const PolicyBatch& batch, double clip,
                                       int epochs, double lr) {
  PpoUpdateStats stats;
  for (int e = 0; e < epochs; ++e) {
    auto eval = ppo_surrogate(actor, batch, clip);
    if (e == 0) {
      stats.first_objective = eval.value;
      stats.first_max_ratio_deviation = eval.max_ratio_deviation;
    }
    stats.last_objective = eval.value;
    nn::adam_step(actor, detail::negated(std::move(eval.grads)), opt, lr);
  }
  return stats;
}

}  // namespace cybermarl::marl

#endif  // CYBERMARL_MARL_UPDATE_HPP_
