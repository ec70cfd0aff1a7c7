// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "cybermarl/env/simulator.hpp"
#include "cybermarl/marl/advantage.hpp"
#include "cybermarl/marl/agent.hpp"
#include "cybermarl/marl/config.hpp"
#include "cybermarl/marl/rollout.hpp"
#include "cybermarl/marl/trainer.hpp"
#include "cybermarl/marl/update.hpp"
#include "cybermarl/random.hpp"
#include "test_support.hpp"

namespace cybermarl::marl {
namespace {

using nn::Matrix;
using nn::Vector;

Vector random_vector(Rng& rng, Eigen::Index n, double scale = 1.0) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = scale * (2.0 * rng.uniform() - 1.0);
  return v;
}

// Random miniature policy problem: obs columns, random masks with the taken
// action legal, random advantages.
PolicyBatch random_batch(Rng& rng, std::size_t obs_dim, std::size_t actions, std::size_t n) {
  PolicyBatch b;
  b.obs.resize(static_cast<Eigen::Index>(obs_dim), static_cast<Eigen::Index>(n));
  b.advantages = random_vector(rng, static_cast<Eigen::Index>(n), 2.0);
  b.old_log_probs = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    b.obs.col(static_cast<Eigen::Index>(j)) = random_vector(rng, static_cast<Eigen::Index>(obs_dim));
    env::ActionMask mask(actions);
    for (std::size_t k = 0; k < actions; ++k) mask[k] = rng.uniform() < 0.7;
    const auto a = draw_index(rng, actions);
    mask[a] = true;
    b.actions.push_back(a);
    b.masks.push_back(std::move(mask));
  }
  return b;
}

nn::MlpParams random_actor(Rng& rng, std::size_t obs_dim, std::size_t actions, std::uint64_t seed) {
  auto p = nn::mlp_init({obs_dim, 5, 4, actions}, seed);
  for (auto& l : p.layers) l.bias = random_vector(rng, l.bias.size(), 0.3);
  return p;
}

// ---------------------------------------------------------------- config

TEST(TrainerConfig, PresetsPerFamily) {
  const auto a2c = TrainerConfig::defaults_for(Algorithm::Maac);
  EXPECT_EQ(a2c.lr, 0.05);
  EXPECT_EQ(a2c.gamma, 0.99);
  EXPECT_EQ(a2c.steps_to_update, 50u);
  const auto ppo = TrainerConfig::defaults_for(Algorithm::Mappo);
  EXPECT_EQ(ppo.lr, 1e-4);
  EXPECT_EQ(ppo.gamma, 0.95);
  EXPECT_EQ(ppo.clip, 0.2);
  EXPECT_EQ(ppo.steps_to_update, 100u);
  EXPECT_EQ(ppo.ppo_epochs, 4);
  EXPECT_EQ(ppo.hidden, (std::vector<std::size_t>{64, 64}));
  EXPECT_EQ(ppo.advantage_mode, AdvantageMode::EmpiricalReturn);
}

TEST(TrainerConfig, AlgorithmNamesAndModes) {
  for (auto a : {Algorithm::Iac, Algorithm::Maac, Algorithm::Ippo, Algorithm::Mappo}) {
    EXPECT_EQ(parse_algorithm(algorithm_name(a)), a);
  }
  EXPECT_FALSE(parse_algorithm("qmix").has_value());
  EXPECT_EQ(critic_mode(Algorithm::Iac), CriticMode::Independent);
  EXPECT_EQ(critic_mode(Algorithm::Mappo), CriticMode::Centralized);
}

TEST(TrainerConfig, Overrides) {
  TrainerOverrides o;
  EXPECT_TRUE(apply_trainer_setting(o, "lr", "0.001"));
  EXPECT_TRUE(apply_trainer_setting(o, "advantage_mode", "td"));
  EXPECT_TRUE(apply_trainer_setting(o, "epochs", "2"));
  EXPECT_FALSE(apply_trainer_setting(o, "layout", "standard"));
  EXPECT_THROW(apply_trainer_setting(o, "advantage_mode", "gae"), ConfigError);
  EXPECT_THROW(apply_trainer_setting(o, "steps_to_update", "0"), ConfigError);
  auto c = TrainerConfig::defaults_for(Algorithm::Ippo);
  o.apply(c);
  EXPECT_EQ(c.lr, 0.001);
  EXPECT_EQ(c.ppo_epochs, 2);
  EXPECT_EQ(c.advantage_mode, AdvantageMode::Td);
  EXPECT_EQ(c.gamma, 0.95);
  c.clip = 1.5;
  EXPECT_THROW(c.validate(), ConfigError);
}

// ---------------------------------------------------------------- critic input

TEST(CriticInput, CentralizedConcatenates) {
  std::vector<Vector> obs;
  Rng rng(1);
  for (auto n : {19, 19, 19, 19, 53}) obs.push_back(random_vector(rng, n));
  const auto x = make_critic_input(obs, CriticMode::Centralized, 2);
  ASSERT_EQ(x.size(), 129);
  EXPECT_EQ(x.segment(0, 19), obs[0]);
  EXPECT_EQ(x.segment(76, 53), obs[4]);
  EXPECT_EQ(make_critic_input(obs, CriticMode::Independent, 0), obs[0]);
  std::vector<Vector> zeros;
  for (auto n : {19, 19, 19, 19, 53}) zeros.push_back(Vector::Zero(n));
  EXPECT_TRUE(make_critic_input(zeros, CriticMode::Centralized, 0).isZero(0.0));
  EXPECT_EQ(make_critic_input(zeros, CriticMode::Centralized, 0).size(), 129);
}

TEST(CriticInput, MissingEncodingThrows) {
  std::vector<Vector> obs = {Vector::Zero(3)};
  EXPECT_THROW(make_critic_input(obs, CriticMode::Independent, 1), std::invalid_argument);
  obs.push_back(Vector());
  EXPECT_THROW(make_critic_input(obs, CriticMode::Centralized, 0), std::invalid_argument);
}

TEST(Agents, ShapesAndNoSharing) {
  const env::CyberDefenseEnv env(env::EnvConfig{});
  const auto central = make_agents(env, CriticMode::Centralized, {64, 64}, 3);
  const auto indep = make_agents(env, CriticMode::Independent, {64, 64}, 3);
  ASSERT_EQ(central.size(), 5u);
  for (std::size_t a = 0; a < 5; ++a) {
    EXPECT_EQ(central[a].actor.dims(), (std::vector<std::size_t>{env.observation_size(a), 64, 64, env.action_size(a)}));
    EXPECT_EQ(central[a].critic_input_dim, 125u);
    EXPECT_EQ(indep[a].critic_input_dim, env.observation_size(a));
    EXPECT_EQ(central[a].actor, indep[a].actor);
  }
  EXPECT_NE(central[0].actor, central[2].actor);  // same shapes, separate parameters
}

// ---------------------------------------------------------------- targets and returns

TEST(TdTargets, Examples) {
  const std::vector<double> r = {-3.0, -1.0};
  const std::vector<double> v = {-10.0, 123.0};
  const auto y = td_targets(r, v, {false, true}, 0.99);
  EXPECT_DOUBLE_EQ(y[0], -12.9);
  EXPECT_EQ(y[1], -1.0);
}

TEST(TdTargets, MatchesScalarLoop) {
  Rng rng(3);
  std::vector<double> r(50), v(50);
  std::vector<bool> d(50);
  for (int t = 0; t < 50; ++t) {
    r[t] = -5.0 * rng.uniform();
    v[t] = 10.0 * (rng.uniform() - 0.5);
    d[t] = (t + 1) % 17 == 0;
  }
  const auto y = td_targets(r, v, d, 0.95);
  for (int t = 0; t < 50; ++t) EXPECT_EQ(y[t], d[t] ? r[t] : r[t] + 0.95 * v[t]);
  EXPECT_THROW(td_targets(r, std::vector<double>(3), d, 0.9), std::invalid_argument);
}

TEST(DiscountedReturns, Examples) {
  const std::vector<double> r = {-1, -1, -1};
  EXPECT_EQ(discounted_returns(r, {false, false, true}, 0.5), (std::vector<double>{-1.75, -1.5, -1.0}));
  EXPECT_EQ(discounted_returns(r, {false, false, true}, 0.0), r);
  // Truncated tail bootstraps from the supplied value.
  EXPECT_EQ(discounted_returns(r, {false, false, false}, 0.5, -8.0), (std::vector<double>{-2.75, -3.5, -5.0}));
}

// Sum_k gamma^k r_{t+k} up to and including the episode's done marker.
std::vector<double> brute_force_returns(const std::vector<double>& r, const std::vector<bool>& d, double gamma) {
  std::vector<double> g(r.size());
  for (std::size_t t = 0; t < r.size(); ++t) {
    double sum = 0.0;
    double disc = 1.0;
    for (std::size_t k = t; k < r.size(); ++k) {
      sum += disc * r[k];
      disc *= gamma;
      if (d[k]) break;
    }
    g[t] = sum;
  }
  return g;
}

TEST(DiscountedReturns, MatchesQuadraticOracle) {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + draw_index(rng, 80);
    std::vector<double> r(n);
    std::vector<bool> d(n);
    for (std::size_t t = 0; t < n; ++t) {
      r[t] = -10.0 * rng.uniform();
      d[t] = rng.uniform() < 0.08;
    }
    d.back() = true;
    const double gamma = rng.uniform();
    const auto fast = discounted_returns(r, d, gamma);
    const auto slow = brute_force_returns(r, d, gamma);
    for (std::size_t t = 0; t < n; ++t) ASSERT_NEAR(fast[t], slow[t], 1e-10);
  }
}

// ---------------------------------------------------------------- rollout

TEST(Rollout, CapacityOneGivesOneTransition) {
  const env::CyberDefenseEnv env(env::EnvConfig{});
  const auto agents = make_agents(env, CriticMode::Independent, {8}, 1);
  RolloutCollector collector(env, 4);
  Rng rng(5);
  const auto buffer = collect_rollout(collector, agents, 1, rng);
  EXPECT_EQ(buffer.size(), 1u);
  EXPECT_TRUE(buffer.full());
}

TEST(Rollout, StoredActionsAreLegalAndLogProbsFinite) {
  const env::CyberDefenseEnv env(env::EnvConfig{});
  UniformPolicy policy;
  for (std::size_t a = 0; a < env.agent_count(); ++a) policy.action_sizes.push_back(env.action_size(a));
  RolloutCollector collector(env, 4);
  Rng rng(5);
  RolloutBuffer buffer(400);
  collector.collect(buffer, policy, rng);
  for (std::size_t j = 0; j < buffer.size(); ++j) {
    const auto& t = buffer[j];
    for (std::size_t a = 0; a < env.agent_count(); ++a) {
      ASSERT_TRUE(t.masks[a][t.actions[a]]);
      ASSERT_TRUE(std::isfinite(t.log_probs[a]));
      std::size_t legal = 0;
      for (bool m : t.masks[a]) legal += m;
      ASSERT_NEAR(t.log_probs[a], -std::log(static_cast<double>(legal)), 1e-12);
    }
    EXPECT_EQ(t.done, (j + 1) % 50 == 0);
    EXPECT_EQ(t.joint_obs.size(), 125);
  }
  EXPECT_EQ(collector.episodes_completed(), 8);
}

TEST(Rollout, DeterministicForFixedSeeds) {
  const env::CyberDefenseEnv env(env::EnvConfig{});
  const auto agents = make_agents(env, CriticMode::Centralized, {16, 16}, 2);
  auto run = [&] {
    RolloutCollector collector(env, 8);
    Rng rng(6);
    return collect_rollout(collector, agents, 120, rng);
  };
  const auto a = run();
  const auto b = run();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    EXPECT_EQ(a[j].actions, b[j].actions);
    EXPECT_EQ(a[j].log_probs, b[j].log_probs);
    EXPECT_EQ(a[j].reward, b[j].reward);
    EXPECT_EQ(a[j].joint_obs, b[j].joint_obs);
    EXPECT_EQ(a[j].next_joint_obs, b[j].next_joint_obs);
    EXPECT_EQ(a[j].done, b[j].done);
  }
}

TEST(Rollout, BufferRejectsOverflow) {
  RolloutBuffer buffer(1);
  buffer.push(Transition{});
  EXPECT_THROW(buffer.push(Transition{}), std::logic_error);
  buffer.clear();
  EXPECT_TRUE(buffer.empty());
  EXPECT_THROW(RolloutBuffer(0), std::invalid_argument);
}

// ---------------------------------------------------------------- advantages

TEST(Advantages, IdentityBothModes) {
  const env::CyberDefenseEnv env(env::EnvConfig{});
  const auto agents = make_agents(env, CriticMode::Centralized, {16}, 2);
  RolloutCollector collector(env, 3);
  Rng rng(1);
  const auto buffer = collect_rollout(collector, agents, 75, rng);
  for (auto mode : {AdvantageMode::Td, AdvantageMode::EmpiricalReturn}) {
    const auto adv = compute_advantages(buffer, agents[1].critic, 1, CriticMode::Centralized, mode, 0.9);
    for (std::size_t t = 0; t < buffer.size(); ++t) EXPECT_EQ(adv.advantages[t], adv.targets[t] - adv.values[t]);
  }
  // The empirical tail (mid-episode) bootstraps from V(x'_last).
  const auto emp = compute_advantages(buffer, agents[1].critic, 1, CriticMode::Centralized,
                                      AdvantageMode::EmpiricalReturn, 0.9);
  const double v_last = nn::forward(agents[1].critic, buffer[74].next_joint_obs).output(0, 0);
  EXPECT_DOUBLE_EQ(emp.targets[74], buffer[74].reward + 0.9 * v_last);
  EXPECT_DOUBLE_EQ(emp.targets[49], buffer[49].reward);
}

TEST(Advantages, NormalizationStandardizes) {
  const env::CyberDefenseEnv env(env::EnvConfig{});
  const auto agents = make_agents(env, CriticMode::Independent, {16}, 2);
  RolloutCollector collector(env, 3);
  Rng rng(1);
  const auto buffer = collect_rollout(collector, agents, 60, rng);
  const auto adv = compute_advantages(buffer, agents[0].critic, 0, CriticMode::Independent,
                                      AdvantageMode::EmpiricalReturn, 0.99, true);
  double mean = 0.0, sq = 0.0;
  for (double a : adv.advantages) mean += a / 60.0;
  for (double a : adv.advantages) sq += (a - mean) * (a - mean) / 60.0;
  EXPECT_NEAR(mean, 0.0, 1e-12);
  EXPECT_NEAR(sq, 1.0, 1e-6);
}

// ---------------------------------------------------------------- critic

TEST(Critic, ZeroLossLeavesParams) {
  auto critic = nn::mlp_init({3, 4, 1}, 1);
  for (auto& l : critic.layers) l.weight.setZero();
  const auto before = critic;
  auto opt = nn::AdamState::for_params(critic);
  const Matrix x = Matrix::Ones(3, 5);
  const std::vector<double> y(5, 0.0);
  EXPECT_EQ(critic_update(critic, opt, x, y, 0.05), 0.0);
  EXPECT_EQ(critic, before);
}

TEST(Critic, SingleSampleLoss) {
  auto critic = nn::mlp_init({2, 1}, 1);
  critic.layers[0].weight.setZero();
  const std::vector<double> y = {2.0};
  EXPECT_EQ(critic_loss(critic, Matrix::Ones(2, 1), y).loss, 4.0);
}

TEST(Critic, GradientMatchesFiniteDifferences) {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    auto critic = nn::mlp_init({4, 6, 5, 1}, static_cast<std::uint64_t>(trial));
    for (auto& l : critic.layers) l.bias = random_vector(rng, l.bias.size(), 0.3);
    Matrix x(4, 7);
    for (Eigen::Index j = 0; j < 7; ++j) x.col(j) = random_vector(rng, 4);
    std::vector<double> y(7);
    for (auto& v : y) v = 5.0 * (rng.uniform() - 0.5);
    const auto eval = critic_loss(critic, x, y);
    const double err = testing::max_fd_relative_error(
        critic, eval.grads, [&](const nn::MlpParams& p) { return critic_loss(p, x, y).loss; });
    EXPECT_LT(err, 1e-4);
  }
}

TEST(Critic, LearnsFrozenBatchAtBothPresets) {
  const env::CyberDefenseEnv env(env::EnvConfig{});
  const auto agents = make_agents(env, CriticMode::Centralized, {64, 64}, 5);
  RolloutCollector collector(env, 5);
  Rng rng(5);
  const auto buffer = collect_rollout(collector, agents, 50, rng);
  const auto inputs = critic_inputs(buffer, 0, CriticMode::Centralized);
  const auto targets = discounted_returns(buffer.rewards(), buffer.dones(), 0.99);
  for (double lr : {0.05, 1e-4}) {
    auto critic = agents[0].critic;
    auto opt = nn::AdamState::for_params(critic);
    const double first = critic_loss(critic, inputs, targets).loss;
    for (int i = 0; i < 100; ++i) critic_update(critic, opt, inputs, targets, lr);
    EXPECT_LT(critic_loss(critic, inputs, targets).loss, first) << "lr " << lr;
  }
}

// ---------------------------------------------------------------- actor objectives

TEST(A2c, ZeroAdvantageZeroGradient) {
  Rng rng(2);
  auto actor = random_actor(rng, 4, 3, 1);
  auto batch = random_batch(rng, 4, 3, 6);
  batch.advantages.setZero();
  const auto eval = a2c_objective(actor, batch);
  for (const auto& l : eval.grads.layers) {
    EXPECT_TRUE(l.weight.isZero(0.0));
    EXPECT_TRUE(l.bias.isZero(0.0));
  }
  const auto before = actor;
  auto opt = nn::AdamState::for_params(actor);
  a2c_actor_update(actor, opt, batch, 0.05);
  EXPECT_EQ(actor, before);
}

TEST(A2c, PositiveAdvantageRaisesTakenAction) {
  Rng rng(4);
  auto actor = random_actor(rng, 4, 2, 2);
  PolicyBatch batch;
  batch.obs = random_vector(rng, 4);
  batch.actions = {1};
  batch.masks = {{true, true}};
  batch.advantages = Vector::Constant(1, 1.5);
  batch.old_log_probs = Vector::Zero(1);
  auto prob = [&](const nn::MlpParams& p) {
    return nn::masked_softmax(nn::forward(p, Vector(batch.obs.col(0))).output.col(0), batch.masks[0])(1);
  };
  const double before = prob(actor);
  auto opt = nn::AdamState::for_params(actor);
  a2c_actor_update(actor, opt, batch, 0.01);
  EXPECT_GT(prob(actor), before);
}

TEST(A2c, GradientMatchesFiniteDifferences) {
  Rng rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    const auto actor = random_actor(rng, 4, 3, static_cast<std::uint64_t>(trial));
    const auto batch = random_batch(rng, 4, 3, 1 + draw_index(rng, 8));
    const auto eval = a2c_objective(actor, batch);
    const double err = testing::max_fd_relative_error(
        actor, eval.grads, [&](const nn::MlpParams& p) { return a2c_objective(p, batch).value; });
    EXPECT_LT(err, 1e-4);
  }
}

TEST(A2c, MaskedStoredActionIsAnError) {
  Rng rng(1);
  const auto actor = random_actor(rng, 4, 3, 1);
  auto batch = random_batch(rng, 4, 3, 2);
  batch.masks[1].assign(3, false);
  batch.masks[1][(batch.actions[1] + 1) % 3] = true;
  EXPECT_THROW(a2c_objective(actor, batch), std::domain_error);
}

// Fills old log-probs with the current policy's values.
void set_behaviour(const nn::MlpParams& actor, PolicyBatch& batch) {
  const Matrix logits = nn::forward(actor, batch.obs).output;
  for (std::size_t j = 0; j < batch.size(); ++j) {
    batch.old_log_probs(static_cast<Eigen::Index>(j)) =
        nn::masked_log_softmax(logits.col(static_cast<Eigen::Index>(j)), batch.masks[j])(
            static_cast<Eigen::Index>(batch.actions[j]));
  }
}

TEST(Ppo, FirstEvaluationHasUnitRatio) {
  Rng rng(3);
  const auto actor = random_actor(rng, 4, 3, 3);
  auto batch = random_batch(rng, 4, 3, 9);
  set_behaviour(actor, batch);
  const auto eval = ppo_surrogate(actor, batch, 0.2);
  EXPECT_EQ(eval.max_ratio_deviation, 0.0);
  EXPECT_DOUBLE_EQ(eval.value, batch.advantages.mean());
}

TEST(Ppo, ClippedBranch) {
  Rng rng(3);
  const auto actor = random_actor(rng, 4, 3, 3);
  auto batch = random_batch(rng, 4, 3, 1);
  batch.advantages(0) = 2.0;
  set_behaviour(actor, batch);
  batch.old_log_probs(0) -= std::log(1.5);  // rho = 1.5
  const auto eval = ppo_surrogate(actor, batch, 0.2);
  EXPECT_NEAR(eval.value, 1.2 * 2.0, 1e-12);
  for (const auto& l : eval.grads.layers) EXPECT_TRUE(l.weight.isZero(0.0));
}

TEST(Ppo, GradientMatchesFiniteDifferences) {
  Rng rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const auto actor = random_actor(rng, 4, 3, static_cast<std::uint64_t>(trial));
    auto batch = random_batch(rng, 4, 3, 1 + draw_index(rng, 8));
    set_behaviour(actor, batch);
    // Shift the behaviour policy so ratios land on both sides of the clip band
    // without sitting on its edges.
    for (Eigen::Index j = 0; j < batch.old_log_probs.size(); ++j) {
      const double shift = std::log(rng.uniform() < 0.5 ? 0.7 + 0.08 * rng.uniform() : 1.02 + 0.1 * rng.uniform());
      batch.old_log_probs(j) -= shift;
    }
    const auto eval = ppo_surrogate(actor, batch, 0.2);
    const double err = testing::max_fd_relative_error(
        actor, eval.grads, [&](const nn::MlpParams& p) { return ppo_surrogate(p, batch, 0.2).value; });
    EXPECT_LT(err, 1e-4);
  }
}

TEST(Ppo, NonFiniteRatioIsAnError) {
  Rng rng(3);
  const auto actor = random_actor(rng, 4, 3, 3);
  auto batch = random_batch(rng, 4, 3, 2);
  batch.old_log_probs(0) = -std::numeric_limits<double>::infinity();
  EXPECT_THROW(ppo_surrogate(actor, batch, 0.2), std::domain_error);
}

TEST(Ppo, UpdateImprovesSurrogate) {
  Rng rng(5);
  auto actor = random_actor(rng, 4, 3, 5);
  auto batch = random_batch(rng, 4, 3, 20);
  set_behaviour(actor, batch);
  auto opt = nn::AdamState::for_params(actor);
  const auto stats = ppo_actor_update(actor, opt, batch, 0.2, 4, 1e-2);
  EXPECT_EQ(stats.first_max_ratio_deviation, 0.0);
  EXPECT_GT(ppo_surrogate(actor, batch, 0.2).value, stats.first_objective);
  EXPECT_EQ(opt.t, 4);
}

// ---------------------------------------------------------------- training loop

env::EnvConfig short_env(int steps = 50) {
  env::EnvConfig cfg;
  cfg.max_steps = steps;
  return cfg;
}

TrainerConfig small(Algorithm a, int episodes, std::uint64_t seed = 1) {
  auto c = TrainerConfig::defaults_for(a);
  c.episodes = episodes;
  c.seed = seed;
  c.hidden = {16, 16};
  return c;
}

TEST(Train, OneEpisodeBelowCapacityMakesNoUpdate) {
  const auto r = train(small(Algorithm::Ippo, 1), short_env());
  EXPECT_EQ(r.episode_returns.size(), 1u);
  EXPECT_EQ(r.updates, 0u);
}

TEST(Train, UpdateCountFollowsCapacity) {
  const auto r = train(small(Algorithm::Iac, 3), short_env());
  EXPECT_EQ(r.episode_returns.size(), 3u);
  EXPECT_EQ(r.updates, 3u);
}

TEST(Train, ZeroRewardTableGivesZeroReturns) {
  auto cfg = short_env();
  cfg.rewards = env::RewardTable::zeros();
  for (auto a : {Algorithm::Iac, Algorithm::Mappo}) {
    const auto r = train(small(a, 4), cfg);
    for (double g : r.episode_returns) EXPECT_EQ(g, 0.0);
  }
}

TEST(Train, SameSeedSameReturns) {
  for (auto a : {Algorithm::Maac, Algorithm::Ippo}) {
    const auto x = train(small(a, 4, 9), short_env());
    const auto y = train(small(a, 4, 9), short_env());
    EXPECT_EQ(x.episode_returns, y.episode_returns);
    for (std::size_t i = 0; i < x.agents.size(); ++i) EXPECT_EQ(x.agents[i].actor, y.agents[i].actor);
  }
}

TEST(Train, BufferHygieneLegalityAndRatioIdentity) {
  for (auto a : {Algorithm::Iac, Algorithm::Maac, Algorithm::Ippo, Algorithm::Mappo}) {
    TrainHooks hooks;
    std::size_t checked = 0;
    double worst_ratio = 0.0;
    hooks.before_update = [&](const RolloutBuffer& b) {
      for (const auto& t : b) {
        for (std::size_t k = 0; k < t.actions.size(); ++k) ASSERT_TRUE(t.masks[k][t.actions[k]]);
        ++checked;
      }
    };
    hooks.after_update = [&](const RolloutBuffer& b) { EXPECT_EQ(b.size(), 0u); };
    hooks.ppo_first_ratio = [&](std::size_t, double dev) { worst_ratio = std::max(worst_ratio, dev); };
    const auto r = train(small(a, 4), short_env(), hooks);
    EXPECT_EQ(checked, 200u) << algorithm_name(a);
    EXPECT_LT(worst_ratio, 1e-12);
  }
}

TEST(Train, SingleAgentCentralizedEqualsIndependent) {
  env::EnvConfig cfg;
  cfg.layout = env::Layout::SingleZone;
  cfg.max_steps = 20;
  for (auto pair : {std::pair{Algorithm::Iac, Algorithm::Maac}, std::pair{Algorithm::Ippo, Algorithm::Mappo}}) {
    std::vector<std::vector<std::size_t>> actions_a, actions_b;
    auto record = [](std::vector<std::vector<std::size_t>>& into) {
      TrainHooks h;
      h.before_update = [&into](const RolloutBuffer& b) {
        for (const auto& t : b) into.push_back(t.actions);
      };
      return h;
    };
    auto ca = small(pair.first, 12, 4);
    auto cb = small(pair.second, 12, 4);
    ca.steps_to_update = cb.steps_to_update = 20;
    const auto ra = train(ca, cfg, record(actions_a));
    const auto rb = train(cb, cfg, record(actions_b));
    EXPECT_EQ(ra.episode_returns, rb.episode_returns);
    EXPECT_EQ(actions_a, actions_b);
    ASSERT_EQ(ra.agents.size(), 1u);
    EXPECT_EQ(ra.agents[0].actor, rb.agents[0].actor);
    EXPECT_EQ(ra.agents[0].critic, rb.agents[0].critic);
    EXPECT_EQ(ra.updates, 12u);
  }
}

TEST(RandomPolicy, ReproducibleAndNonPositive) {
  const auto a = run_random_policy(short_env(), 20, 3);
  const auto b = run_random_policy(short_env(), 20, 3);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.size(), 20u);
  double mean = 0.0;
  for (double g : a) {
    EXPECT_LE(g, 0.0);
    mean += g / 20.0;
  }
  EXPECT_LT(mean, 0.0);
}

}  // namespace
}  // namespace cybermarl::marl
