// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_ENV_ZONE_HPP_
#define CYBERMARL_ENV_ZONE_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cybermarl::env {

/// Security zones of the defended network. The integer codes are stable and
/// used for ordering and serialization.
enum class ZoneId : std::uint8_t {
  Internet = 0,
  Contractor = 1,
  HqPublicAccess = 2,
  HqAdmin = 3,
  HqOffice = 4,
  RestrictedA = 5,
  OperationalA = 6,
  RestrictedB = 7,
  OperationalB = 8,
};

inline constexpr std::size_t kZoneCount = 9;

inline constexpr std::array<ZoneId, kZoneCount> kAllZones = {
    ZoneId::Internet,    ZoneId::Contractor,   ZoneId::HqPublicAccess,
    ZoneId::HqAdmin,     ZoneId::HqOffice,     ZoneId::RestrictedA,
    ZoneId::OperationalA, ZoneId::RestrictedB, ZoneId::OperationalB,
};

constexpr std::size_t zone_code(ZoneId z) noexcept { return static_cast<std::size_t>(z); }

inline ZoneId zone_from_code(std::size_t code) {
  if (code >= kZoneCount) throw std::out_of_range("zone code out of range: " + std::to_string(code));
  return static_cast<ZoneId>(code);
}

constexpr std::string_view zone_name(ZoneId z) noexcept {
  constexpr std::array<std::string_view, kZoneCount> names = {
      "Internet",  "Contractor",   "HQ_PublicAccess", "HQ_Admin",     "HQ_Office",
      "RestrictedA", "OperationalA", "RestrictedB",   "OperationalB",
  };
  return names[zone_code(z)];
}

inline std::optional<ZoneId> parse_zone(std::string_view name) {
  for (auto z : kAllZones) {
    if (zone_name(z) == name) return z;
  }
  return std::nullopt;
}

/// Undirected zone pair, stored with the lower code first.
struct Edge {
  ZoneId lo{};
  ZoneId hi{};

  static Edge between(ZoneId a, ZoneId b) {
    if (a == b) throw std::invalid_argument("self-loop edge on zone " + std::string(zone_name(a)));
    return a < b ? Edge{a, b} : Edge{b, a};
  }

  bool touches(ZoneId z) const noexcept { return lo == z || hi == z; }
  ZoneId other(ZoneId z) const noexcept { return lo == z ? hi : lo; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string edge_name(const Edge& e) {
  return std::string(zone_name(e.lo)) + "-" + std::string(zone_name(e.hi));
}

}  // namespace cybermarl::env

#endif  // CYBERMARL_ENV_ZONE_HPP_
