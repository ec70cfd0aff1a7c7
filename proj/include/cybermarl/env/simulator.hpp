// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_ENV_SIMULATOR_HPP_
#define CYBERMARL_ENV_SIMULATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cybermarl/env/action.hpp"
#include "cybermarl/env/config.hpp"
#include "cybermarl/env/reward.hpp"
#include "cybermarl/env/state.hpp"
#include "cybermarl/env/topology.hpp"
#include "cybermarl/random.hpp"

namespace cybermarl::env {

/// Local view of one blue agent. `multidiscrete[i]` takes values in
/// [0, cardinalities[i]); `encoded` concatenates their one-hot blocks.
struct ObservationVector {
  std::size_t agent_id = 0;
  std::vector<int> multidiscrete;
  std::vector<int> cardinalities;
  std::vector<double> encoded;

  friend bool operator==(const ObservationVector&, const ObservationVector&) = default;
};

using ActionMask = std::vector<bool>;

struct ResetResult {
  EpisodeState state;
  std::vector<ObservationVector> observations;
};

struct StepResult {
  std::vector<ObservationVector> observations;
  double reward = 0.0;
  bool done = false;
  std::vector<PenaltyEvent> events;
};

class IllegalActionError : public std::invalid_argument {
 public:
  IllegalActionError(std::size_t agent, std::size_t index)
      : std::invalid_argument("agent " + std::to_string(agent) + " submitted masked action index " +
                              std::to_string(index)),
        agent_(agent),
        index_(index) {}

  std::size_t agent() const noexcept { return agent_; }
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t agent_;
  std::size_t index_;
};

// ---------------------------------------------------------------------------
// Phase functions. Each takes its random source explicitly so a test can feed
// a scripted sequence of draws.
// ---------------------------------------------------------------------------

namespace detail {

inline void compromise(EpisodeState& s, std::size_t host) {
  auto& h = s.hosts[host];
  h.compromised = true;
  h.entrenched_steps = 0;
}

inline void confirm_by_decoy(EpisodeState& s, std::size_t host) {
  auto& h = s.hosts[host];
  h.suspicion = Suspicion::Confirmed;
  h.evidence = Evidence::DecoyTrip;
}

inline bool zone_has_compromise(const NetworkTopology& topo, const EpisodeState& s, ZoneId z) {
  const auto first = topo.first_host(z);
  for (int i = 0; i < topo.hosts(z); ++i) {
    if (s.hosts[first + static_cast<std::size_t>(i)].compromised) return true;
  }
  return false;
}

inline void clean_host(const NetworkTopology& topo, EpisodeState& s, std::size_t host) {
  auto& h = s.hosts[host];
  h.compromised = false;
  h.entrenched_steps = 0;
  h.suspicion = Suspicion::None;
  h.evidence = Evidence::None;
  if (h.zone != ZoneId::Contractor && !zone_has_compromise(topo, s, h.zone)) s.red_zones.erase(h.zone);
}

}  // namespace detail

inline ActionMask legal_action_mask(const NetworkTopology& topo, const EpisodeState& s, std::size_t agent) {
  if (agent >= topo.agent_count()) throw std::out_of_range("agent id " + std::to_string(agent) + " out of range");
  const ActionLayout layout(topo, agent);
  ActionMask mask(layout.size(), false);
  mask[0] = true;
  for (std::size_t k = 0; k < layout.host_slots(); ++k) {
    const auto& h = s.hosts[layout.hosts()[k]];
    const bool flagged = h.suspicion != Suspicion::None;
    mask[layout.analyze_index(k)] = flagged;
    mask[layout.decoy_index(k)] = !h.decoy;
    mask[layout.remove_index(k)] = flagged;
    mask[layout.restore_index(k)] = h.suspicion == Suspicion::Confirmed;
  }
  for (std::size_t j = 0; j < layout.edge_slots(); ++j) {
    const bool blocked = s.blocked_edges[layout.edges()[j]];
    mask[layout.block_index(j)] = !blocked;
    mask[layout.allow_index(j)] = blocked;
  }
  return mask;
}

/// Applies one decoded blue action. Legality is checked by the caller.
inline void apply_blue_action(const NetworkTopology& topo, const EnvConfig& cfg, EpisodeState& s,
                              const BlueAction& a) {
  struct Visitor {
    const NetworkTopology& topo;
    const EnvConfig& cfg;
    EpisodeState& s;

    void operator()(action::Monitor) const {}
    void operator()(action::Analyze x) const {
      auto& h = s.hosts[x.host];
      if (h.compromised) {
        h.suspicion = Suspicion::Confirmed;
        h.evidence = Evidence::AnalyzeHit;
      } else {
        h.suspicion = Suspicion::None;
        h.evidence = Evidence::None;
      }
    }
    void operator()(action::DeployDecoy x) const { s.hosts[x.host].decoy = true; }
    void operator()(action::Remove x) const {
      auto& h = s.hosts[x.host];
      if (!h.compromised) {
        h.suspicion = Suspicion::None;
        h.evidence = Evidence::None;
      } else if (h.entrenched_steps < cfg.remove_entrench_limit) {
        detail::clean_host(topo, s, x.host);
      }
    }
    void operator()(action::Restore x) const {
      detail::clean_host(topo, s, x.host);
      s.hosts[x.host].restored_this_step = true;
    }
    void operator()(action::BlockTraffic x) const { s.blocked_edges[x.edge] = true; }
    void operator()(action::AllowTraffic x) const { s.blocked_edges[x.edge] = false; }
  };
  std::visit(Visitor{topo, cfg, s}, a);
}

/// Red phase. Each zone holding red at the start of the phase (zone-code
/// order) draws u: u < move -> lateral move to a random neighbour; u < move +
/// spread -> compromise one more clean host in the zone; otherwise Impact.
/// Afterwards every compromised host gains one entrenchment step.
///
/// Draw order per zone: u; then for a move the neighbour index and, if the
/// target has hosts and the move is not already refused, the entry host
/// index; for a spread the index into the zone's clean hosts.
template <UniformSource R>
void scripted_red_step(const NetworkTopology& topo, const EnvConfig& cfg, EpisodeState& s, R& draws,
                       std::vector<PenaltyEvent>& events) {
  for (const ZoneId z : s.red_zones.members()) {
    const double u = draws.uniform();
    if (u < cfg.red_move_prob) {
      const auto& nbrs = topo.neighbors(z);
      if (nbrs.empty()) continue;
      const ZoneId target = nbrs[draw_index(draws, nbrs.size())];
      if (s.red_zones.contains(target)) continue;
      if (s.blocked_edges[*topo.edge_index(z, target)]) continue;
      if (topo.hosts(target) == 0) {
        // Hostless transit zone: red can sit there but has nothing to touch.
        s.red_zones.insert(target);
        continue;
      }
      const auto entry = topo.first_host(target) + draw_index(draws, static_cast<std::size_t>(topo.hosts(target)));
      if (s.hosts[entry].decoy) {
        detail::confirm_by_decoy(s, entry);
        continue;
      }
      detail::compromise(s, entry);
      s.red_zones.insert(target);
    } else if (u < cfg.red_move_prob + cfg.red_spread_prob) {
      std::vector<std::size_t> clean;
      for (int i = 0; i < topo.hosts(z); ++i) {
        const auto id = topo.host_id(z, i);
        if (!s.hosts[id].compromised) clean.push_back(id);
      }
      if (clean.empty()) continue;
      const auto victim = clean[draw_index(draws, clean.size())];
      if (s.hosts[victim].decoy) {
        detail::confirm_by_decoy(s, victim);
        continue;
      }
      detail::compromise(s, victim);
    } else if (topo.hosts(z) > 0) {
      events.push_back({z, PenaltyKind::RedImpactOrAccess, s.step + 1});
    }
  }
  for (auto& h : s.hosts) {
    if (h.compromised) ++h.entrenched_steps;
  }
}

/// Green phase. For every defended zone (zone-code order) and each of its
/// greens: draw u; u < local_work -> draw a host in the zone, fail if it is
/// compromised or was restored this step; otherwise draw a neighbour zone and
/// access a service there (blocked edge -> AccessServiceFail for the home
/// zone; compromised target host -> RedImpactOrAccess for the target zone).
/// Then one phishing draw; on success red spawns on a random host of the home
/// zone if the zone has no red yet.
template <UniformSource R>
void scripted_green_step(const NetworkTopology& topo, const EnvConfig& cfg, EpisodeState& s, R& draws,
                         std::vector<PenaltyEvent>& events) {
  const int when = s.step + 1;
  for (const ZoneId z : kAllZones) {
    if (!topo.defended(z)) continue;
    const auto zone_hosts = static_cast<std::size_t>(topo.hosts(z));
    for (int g = 0; g < cfg.greens_per_zone; ++g) {
      const double u = draws.uniform();
      if (u < cfg.green_local_work_prob) {
        const auto& h = s.hosts[topo.first_host(z) + draw_index(draws, zone_hosts)];
        if (h.compromised || h.restored_this_step) events.push_back({z, PenaltyKind::LocalWorkFail, when});
      } else {
        const auto& nbrs = topo.neighbors(z);
        if (nbrs.empty()) {
          events.push_back({z, PenaltyKind::AccessServiceFail, when});
        } else {
          const ZoneId target = nbrs[draw_index(draws, nbrs.size())];
          if (s.blocked_edges[*topo.edge_index(z, target)]) {
            events.push_back({z, PenaltyKind::AccessServiceFail, when});
          } else if (topo.hosts(target) > 0) {
            const auto id = topo.first_host(target) + draw_index(draws, static_cast<std::size_t>(topo.hosts(target)));
            if (s.hosts[id].compromised) events.push_back({target, PenaltyKind::RedImpactOrAccess, when});
          }
        }
      }
      const double phish = draws.uniform();
      if (phish < cfg.phishing_prob && !s.red_zones.contains(z)) {
        detail::compromise(s, topo.first_host(z) + draw_index(draws, zone_hosts));
        s.red_zones.insert(z);
      }
    }
  }
}

/// Alert phase: one draw per defended host in global host order.
template <UniformSource R>
void monitor_alerts(const NetworkTopology& topo, const EnvConfig& cfg, EpisodeState& s, R& draws) {
  for (auto& h : s.hosts) {
    if (!topo.defended(h.zone)) continue;
    const double u = draws.uniform();
    if (h.compromised) {
      if (h.suspicion != Suspicion::Confirmed && u < cfg.monitor_detect_prob) h.suspicion = Suspicion::Suspicious;
    } else if (h.suspicion == Suspicion::None && u < cfg.false_alarm_prob) {
      h.suspicion = Suspicion::Suspicious;
    }
  }
}

/// Slot order: covered hosts by (zone code, index), each one-hot(suspicion, 3)
/// then one-hot(decoy, 2); then incident edges in edge order, one-hot(blocked, 2).
inline ObservationVector encode_observation(const NetworkTopology& topo, const EpisodeState& s, std::size_t agent) {
  if (agent >= topo.agent_count()) throw std::out_of_range("agent id " + std::to_string(agent) + " out of range");
  ObservationVector obs;
  obs.agent_id = agent;
  auto slot = [&obs](int value, int cardinality) {
    obs.multidiscrete.push_back(value);
    obs.cardinalities.push_back(cardinality);
    for (int c = 0; c < cardinality; ++c) obs.encoded.push_back(c == value ? 1.0 : 0.0);
  };
  for (const auto id : topo.agent_hosts(agent)) {
    slot(static_cast<int>(s.hosts[id].suspicion), 3);
    slot(s.hosts[id].decoy ? 1 : 0, 2);
  }
  for (const auto e : topo.agent_edges(agent)) slot(s.blocked_edges[e] ? 1 : 0, 2);
  return obs;
}

inline std::size_t observation_size(const NetworkTopology& topo, std::size_t agent) {
  return 5 * topo.agent_hosts(agent).size() + 2 * topo.agent_edges(agent).size();
}

/// The simulator: owns the configuration and topology; episode state lives
/// with the caller so independent episodes never share mutable data.
class CyberDefenseEnv {
 public:
  explicit CyberDefenseEnv(EnvConfig cfg) : cfg_(validated(std::move(cfg))), topology_(build_topology(cfg_)) {
    for (std::size_t a = 0; a < topology_.agent_count(); ++a) layouts_.emplace_back(topology_, a);
  }

  const EnvConfig& config() const noexcept { return cfg_; }
  const NetworkTopology& topology() const noexcept { return topology_; }
  std::size_t agent_count() const noexcept { return topology_.agent_count(); }
  const ActionLayout& action_layout(std::size_t agent) const { return layouts_.at(agent); }
  std::size_t action_size(std::size_t agent) const { return layouts_.at(agent).size(); }
  std::size_t observation_size(std::size_t agent) const { return env::observation_size(topology_, agent); }

  /// All hosts clean except one random Contractor host; red holds Contractor.
  ResetResult reset(std::uint64_t seed) const {
    EpisodeState s;
    s.rng = Rng(seed);
    for (auto z : kAllZones) {
      for (int i = 0; i < topology_.hosts(z); ++i) s.hosts.push_back(HostState{.zone = z, .index = i});
    }
    s.blocked_edges.assign(topology_.edges().size(), false);
    const auto foothold = topology_.first_host(ZoneId::Contractor) +
                          draw_index(s.rng, static_cast<std::size_t>(topology_.hosts(ZoneId::Contractor)));
    detail::compromise(s, foothold);
    s.red_zones.insert(ZoneId::Contractor);
    auto obs = observe(s);
    return {std::move(s), std::move(obs)};
  }

  /// Advances one step. Phases: clear restore flags, blue actions in agent
  /// order, red, green, monitor alerts, reward, step counter.
  StepResult step(EpisodeState& s, std::span<const std::size_t> joint_action) const {
    if (s.done) throw std::logic_error("step called on a finished episode");
    if (joint_action.size() != agent_count()) {
      throw std::invalid_argument("expected " + std::to_string(agent_count()) + " actions, got " +
                                  std::to_string(joint_action.size()));
    }
    for (std::size_t a = 0; a < agent_count(); ++a) {
      const auto mask = env::legal_action_mask(topology_, s, a);
      if (joint_action[a] >= mask.size() || !mask[joint_action[a]]) throw IllegalActionError(a, joint_action[a]);
    }

    for (auto& h : s.hosts) h.restored_this_step = false;
    for (std::size_t a = 0; a < agent_count(); ++a) {
      apply_blue_action(topology_, cfg_, s, layouts_[a].decode(joint_action[a]));
    }
    StepResult out;
    scripted_red_step(topology_, cfg_, s, s.rng, out.events);
    scripted_green_step(topology_, cfg_, s, s.rng, out.events);
    monitor_alerts(topology_, cfg_, s, s.rng);
    out.reward = compute_shared_reward(out.events, cfg_.rewards);
    ++s.step;
    s.done = s.step >= cfg_.max_steps;
    out.done = s.done;
    out.observations = observe(s);
    return out;
  }

  ActionMask legal_action_mask(const EpisodeState& s, std::size_t agent) const {
    return env::legal_action_mask(topology_, s, agent);
  }

  ObservationVector encode_observation(const EpisodeState& s, std::size_t agent) const {
    return env::encode_observation(topology_, s, agent);
  }

  std::vector<ObservationVector> observe(const EpisodeState& s) const {
    std::vector<ObservationVector> out;
    out.reserve(agent_count());
    for (std::size_t a = 0; a < agent_count(); ++a) out.push_back(encode_observation(s, a));
    return out;
  }

 private:
  static EnvConfig validated(EnvConfig cfg) {
    cfg.validate();
    return cfg;
  }

  EnvConfig cfg_;
  NetworkTopology topology_;
  std::vector<ActionLayout> layouts_;
};

}  // namespace cybermarl::env

#endif  // CYBERMARL_ENV_SIMULATOR_HPP_
