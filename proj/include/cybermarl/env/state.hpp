// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_ENV_STATE_HPP_
#define CYBERMARL_ENV_STATE_HPP_

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "cybermarl/env/zone.hpp"
#include "cybermarl/random.hpp"

namespace cybermarl::env {

enum class Suspicion : std::uint8_t { None = 0, Suspicious = 1, Confirmed = 2 };

/// What produced a Confirmed suspicion.
enum class Evidence : std::uint8_t { None = 0, AnalyzeHit, DecoyTrip };

struct HostState {
  ZoneId zone{};
  int index = 0;
  bool compromised = false;
  int entrenched_steps = 0;  // consecutive red phases survived while compromised
  bool decoy = false;
  Suspicion suspicion = Suspicion::None;
  Evidence evidence = Evidence::None;
  bool restored_this_step = false;

  friend bool operator==(const HostState&, const HostState&) = default;
};

/// Set of zones; one bit per zone, so a zone holds at most one red presence.
class ZoneSet {
 public:
  bool contains(ZoneId z) const { return bits_.test(zone_code(z)); }
  void insert(ZoneId z) { bits_.set(zone_code(z)); }
  void erase(ZoneId z) { bits_.reset(zone_code(z)); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  /// Members in zone-code order.
  std::vector<ZoneId> members() const {
    std::vector<ZoneId> out;
    for (auto z : kAllZones) {
      if (contains(z)) out.push_back(z);
    }
    return out;
  }

  friend bool operator==(const ZoneSet&, const ZoneSet&) = default;

 private:
  std::bitset<kZoneCount> bits_;
};

/// Full ground-truth world state. Hosts are indexed by global host id.
struct EpisodeState {
  std::vector<HostState> hosts;
  ZoneSet red_zones;
  std::vector<bool> blocked_edges;  // indexed like NetworkTopology::edges()
  int step = 0;
  Rng rng;
  bool done = false;

  friend bool operator==(const EpisodeState&, const EpisodeState&) = default;
};

}  // namespace cybermarl::env

#endif  // CYBERMARL_ENV_STATE_HPP_
