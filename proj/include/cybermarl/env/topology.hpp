// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_ENV_TOPOLOGY_HPP_
#define CYBERMARL_ENV_TOPOLOGY_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cybermarl/env/config.hpp"
#include "cybermarl/env/zone.hpp"

namespace cybermarl::env {

/// Static structure of the network: zone adjacency, hosts, and which blue
/// agent defends which zones. Hosts are numbered globally in (zone code,
/// index) order.
class NetworkTopology {
 public:
  NetworkTopology(std::vector<Edge> edges, std::array<int, kZoneCount> hosts_per_zone,
                  std::vector<std::vector<ZoneId>> agent_coverage)
      : edges_(std::move(edges)), hosts_per_zone_(hosts_per_zone), coverage_(std::move(agent_coverage)) {
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
      throw std::invalid_argument("duplicate adjacency edge");
    }
    for (const auto& e : edges_) {
      if (e.lo >= e.hi) throw std::invalid_argument("edges must be normalized and irreflexive");
      neighbors_[zone_code(e.lo)].push_back(e.hi);
      neighbors_[zone_code(e.hi)].push_back(e.lo);
    }
    for (auto& n : neighbors_) std::sort(n.begin(), n.end());

    std::size_t offset = 0;
    for (auto z : kAllZones) {
      if (hosts_per_zone_[zone_code(z)] < 0) throw std::invalid_argument("negative host count");
      host_offset_[zone_code(z)] = offset;
      offset += static_cast<std::size_t>(hosts_per_zone_[zone_code(z)]);
    }
    host_count_ = offset;

    for (std::size_t agent = 0; agent < coverage_.size(); ++agent) {
      auto& zones = coverage_[agent];
      std::sort(zones.begin(), zones.end());
      for (auto z : zones) {
        if (owner_[zone_code(z)]) {
          throw std::invalid_argument("zone " + std::string(zone_name(z)) + " covered by two agents");
        }
        if (hosts(z) < 1) {
          throw std::invalid_argument("defended zone " + std::string(zone_name(z)) + " has no hosts");
        }
        owner_[zone_code(z)] = agent;
      }
    }
    for (std::size_t agent = 0; agent < coverage_.size(); ++agent) {
      std::vector<std::size_t> hosts_list;
      for (auto z : coverage_[agent]) {
        for (int i = 0; i < hosts(z); ++i) hosts_list.push_back(host_id(z, i));
      }
      agent_hosts_.push_back(std::move(hosts_list));
      std::vector<std::size_t> edge_list;
      for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (covers(agent, edges_[e].lo) || covers(agent, edges_[e].hi)) edge_list.push_back(e);
      }
      agent_edges_.push_back(std::move(edge_list));
    }
  }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<ZoneId>& neighbors(ZoneId z) const noexcept { return neighbors_[zone_code(z)]; }

  std::optional<std::size_t> edge_index(ZoneId a, ZoneId b) const {
    if (a == b) return std::nullopt;
    const auto e = Edge::between(a, b);
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }
  bool adjacent(ZoneId a, ZoneId b) const { return edge_index(a, b).has_value(); }

  int hosts(ZoneId z) const noexcept { return hosts_per_zone_[zone_code(z)]; }
  std::size_t host_count() const noexcept { return host_count_; }
  std::size_t host_id(ZoneId z, int index) const noexcept {
    return host_offset_[zone_code(z)] + static_cast<std::size_t>(index);
  }
  std::size_t first_host(ZoneId z) const noexcept { return host_offset_[zone_code(z)]; }

  std::size_t agent_count() const noexcept { return coverage_.size(); }
  const std::vector<ZoneId>& coverage(std::size_t agent) const { return coverage_.at(agent); }
  bool covers(std::size_t agent, ZoneId z) const { return owner_[zone_code(z)] == agent; }
  std::optional<std::size_t> owner(ZoneId z) const noexcept { return owner_[zone_code(z)]; }
  bool defended(ZoneId z) const noexcept { return owner_[zone_code(z)].has_value(); }

  /// Global host ids covered by `agent`, sorted by (zone code, index).
  const std::vector<std::size_t>& agent_hosts(std::size_t agent) const { return agent_hosts_.at(agent); }
  /// Indices into edges() incident to a zone covered by `agent`, in edge order.
  const std::vector<std::size_t>& agent_edges(std::size_t agent) const { return agent_edges_.at(agent); }

  friend bool operator==(const NetworkTopology& a, const NetworkTopology& b) {
    return a.edges_ == b.edges_ && a.hosts_per_zone_ == b.hosts_per_zone_ && a.coverage_ == b.coverage_;
  }

 private:
  std::vector<Edge> edges_;
  std::array<int, kZoneCount> hosts_per_zone_{};
  std::vector<std::vector<ZoneId>> coverage_;
  std::array<std::vector<ZoneId>, kZoneCount> neighbors_{};
  std::array<std::size_t, kZoneCount> host_offset_{};
  std::array<std::optional<std::size_t>, kZoneCount> owner_{};
  std::size_t host_count_ = 0;
  std::vector<std::vector<std::size_t>> agent_hosts_;
  std::vector<std::vector<std::size_t>> agent_edges_;
};

inline NetworkTopology build_topology(const EnvConfig& cfg) {
  using Z = ZoneId;
  if (cfg.hosts(Z::Contractor) < 1) throw ConfigError("Contractor needs at least one host for the red foothold");

  std::vector<Edge> edges;
  std::vector<std::vector<ZoneId>> coverage;
  std::array<int, kZoneCount> hosts = cfg.hosts_per_zone;

  if (cfg.layout == Layout::Standard) {
    edges = {
        Edge::between(Z::Internet, Z::Contractor),     Edge::between(Z::Internet, Z::RestrictedA),
        Edge::between(Z::Internet, Z::RestrictedB),    Edge::between(Z::Internet, Z::HqPublicAccess),
        Edge::between(Z::RestrictedA, Z::OperationalA), Edge::between(Z::RestrictedB, Z::OperationalB),
        Edge::between(Z::HqPublicAccess, Z::HqAdmin),  Edge::between(Z::HqAdmin, Z::HqOffice),
        Edge::between(Z::HqPublicAccess, Z::HqOffice),
    };
    coverage = {{Z::RestrictedA}, {Z::OperationalA}, {Z::RestrictedB}, {Z::OperationalB},
                {Z::HqPublicAccess, Z::HqAdmin, Z::HqOffice}};
  } else {
    edges = {Edge::between(Z::Internet, Z::Contractor), Edge::between(Z::Internet, Z::RestrictedA)};
    coverage = {{Z::RestrictedA}};
    for (auto z : kAllZones) {
      if (z != Z::Contractor && z != Z::RestrictedA && z != Z::Internet) hosts[zone_code(z)] = 0;
    }
  }
  for (const auto& zones : coverage) {
    for (auto z : zones) {
      if (hosts[zone_code(z)] < 1) {
        throw ConfigError("defended zone " + std::string(zone_name(z)) + " needs at least one host");
      }
    }
  }
  return NetworkTopology(std::move(edges), hosts, std::move(coverage));
}

}  // namespace cybermarl::env

#endif  // CYBERMARL_ENV_TOPOLOGY_HPP_
