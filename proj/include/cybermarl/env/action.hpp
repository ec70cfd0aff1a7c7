// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_ENV_ACTION_HPP_
#define CYBERMARL_ENV_ACTION_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cybermarl/env/topology.hpp"

namespace cybermarl::env {

namespace action {
struct Monitor {};
struct Analyze { std::size_t host; };
struct DeployDecoy { std::size_t host; };
struct Remove { std::size_t host; };
struct Restore { std::size_t host; };
struct BlockTraffic { std::size_t edge; };
struct AllowTraffic { std::size_t edge; };
}  // namespace action

/// Host arguments are global host ids, edge arguments are indices into
/// NetworkTopology::edges().
using BlueAction = std::variant<action::Monitor, action::Analyze, action::DeployDecoy, action::Remove,
                                action::Restore, action::BlockTraffic, action::AllowTraffic>;

/// Flat action indexing for one agent:
///   0                 Monitor
///   1 + k             Analyze(host k)
///   1 + H + k         DeployDecoy(host k)
///   1 + 2H + k        Remove(host k)
///   1 + 3H + k        Restore(host k)
///   1 + 4H + j        BlockTraffic(edge j)
///   1 + 4H + E + j    AllowTraffic(edge j)
/// where k runs over the agent's covered hosts and j over its incident edges.
class ActionLayout {
 public:
  ActionLayout(const NetworkTopology& topology, std::size_t agent)
      : hosts_(topology.agent_hosts(agent)), edges_(topology.agent_edges(agent)) {}

  std::size_t host_slots() const noexcept { return hosts_.size(); }
  std::size_t edge_slots() const noexcept { return edges_.size(); }
  std::size_t size() const noexcept { return 1 + 4 * hosts_.size() + 2 * edges_.size(); }

  const std::vector<std::size_t>& hosts() const noexcept { return hosts_; }
  const std::vector<std::size_t>& edges() const noexcept { return edges_; }

  std::size_t analyze_index(std::size_t k) const noexcept { return 1 + k; }
  std::size_t decoy_index(std::size_t k) const noexcept { return 1 + hosts_.size() + k; }
  std::size_t remove_index(std::size_t k) const noexcept { return 1 + 2 * hosts_.size() + k; }
  std::size_t restore_index(std::size_t k) const noexcept { return 1 + 3 * hosts_.size() + k; }
  std::size_t block_index(std::size_t j) const noexcept { return 1 + 4 * hosts_.size() + j; }
  std::size_t allow_index(std::size_t j) const noexcept { return 1 + 4 * hosts_.size() + edges_.size() + j; }

  BlueAction decode(std::size_t index) const {
    if (index >= size()) throw std::out_of_range("action index " + std::to_string(index) + " out of range");
    if (index == 0) return action::Monitor{};
    const auto h = hosts_.size();
    std::size_t i = index - 1;
    if (i < h) return action::Analyze{hosts_[i]};
    i -= h;
    if (i < h) return action::DeployDecoy{hosts_[i]};
    i -= h;
    if (i < h) return action::Remove{hosts_[i]};
    i -= h;
    if (i < h) return action::Restore{hosts_[i]};
    i -= h;
    if (i < edges_.size()) return action::BlockTraffic{edges_[i]};
    i -= edges_.size();
    return action::AllowTraffic{edges_[i]};
  }

 private:
  std::vector<std::size_t> hosts_;
  std::vector<std::size_t> edges_;
};

inline std::string action_name(const BlueAction& a) {
  struct Visitor {
    std::string operator()(action::Monitor) const { return "Monitor"; }
    std::string operator()(action::Analyze x) const { return "Analyze(" + std::to_string(x.host) + ")"; }
    std::string operator()(action::DeployDecoy x) const { return "DeployDecoy(" + std::to_string(x.host) + ")"; }
    std::string operator()(action::Remove x) const { return "Remove(" + std::to_string(x.host) + ")"; }
    std::string operator()(action::Restore x) const { return "Restore(" + std::to_string(x.host) + ")"; }
    std::string operator()(action::BlockTraffic x) const { return "BlockTraffic(" + std::to_string(x.edge) + ")"; }
    std::string operator()(action::AllowTraffic x) const { return "AllowTraffic(" + std::to_string(x.edge) + ")"; }
  };
  return std::visit(Visitor{}, a);
}

}  // namespace cybermarl::env

#endif  // CYBERMARL_ENV_ACTION_HPP_
