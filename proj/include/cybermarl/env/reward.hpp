// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_ENV_REWARD_HPP_
#define CYBERMARL_ENV_REWARD_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cybermarl/env/zone.hpp"

namespace cybermarl::env {

/// Reward rows. The three HQ sub-zones share one row.
enum class RewardCategory : std::uint8_t {
  Hq = 0,
  Contractor,
  RestrictedA,
  OperationalA,
  RestrictedB,
  OperationalB,
  Internet,
};

inline constexpr std::size_t kRewardCategoryCount = 7;

enum class PenaltyKind : std::uint8_t {
  LocalWorkFail = 0,
  AccessServiceFail = 1,
  RedImpactOrAccess = 2,
};

inline constexpr std::size_t kPenaltyKindCount = 3;

constexpr RewardCategory reward_category(ZoneId z) noexcept {
  switch (z) {
    case ZoneId::Internet: return RewardCategory::Internet;
    case ZoneId::Contractor: return RewardCategory::Contractor;
    case ZoneId::HqPublicAccess:
    case ZoneId::HqAdmin:
    case ZoneId::HqOffice: return RewardCategory::Hq;
    case ZoneId::RestrictedA: return RewardCategory::RestrictedA;
    case ZoneId::OperationalA: return RewardCategory::OperationalA;
    case ZoneId::RestrictedB: return RewardCategory::RestrictedB;
    case ZoneId::OperationalB: return RewardCategory::OperationalB;
  }
  return RewardCategory::Internet;
}

constexpr std::string_view category_name(RewardCategory c) noexcept {
  constexpr std::array<std::string_view, kRewardCategoryCount> names = {
      "HQ", "Contractor", "RestrictedA", "OperationalA", "RestrictedB", "OperationalB", "Internet",
  };
  return names[static_cast<std::size_t>(c)];
}

constexpr std::string_view penalty_kind_name(PenaltyKind k) noexcept {
  constexpr std::array<std::string_view, kPenaltyKindCount> names = {
      "LocalWorkFail", "AccessServiceFail", "RedImpactOrAccess",
  };
  return names[static_cast<std::size_t>(k)];
}

inline std::optional<RewardCategory> parse_category(std::string_view name) {
  for (std::size_t i = 0; i < kRewardCategoryCount; ++i) {
    const auto c = static_cast<RewardCategory>(i);
    if (category_name(c) == name) return c;
  }
  return std::nullopt;
}

inline std::optional<PenaltyKind> parse_penalty_kind(std::string_view name) {
  for (std::size_t i = 0; i < kPenaltyKindCount; ++i) {
    const auto k = static_cast<PenaltyKind>(i);
    if (penalty_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

struct PenaltyEvent {
  ZoneId zone{};
  PenaltyKind kind{};
  int step = 0;

  friend bool operator==(const PenaltyEvent&, const PenaltyEvent&) = default;
};

/// Team penalties indexed by (category, kind). Every entry must be <= 0.
class RewardTable {
 public:
  using Row = std::array<double, kPenaltyKindCount>;

  RewardTable() : RewardTable(defaults()) {}

  explicit RewardTable(const std::array<Row, kRewardCategoryCount>& rows) : rows_(rows) {
    for (const auto& row : rows_) {
      for (double v : row) {
        if (!(v <= 0.0)) throw std::invalid_argument("reward table entries must be <= 0");
      }
    }
  }

  /// Phase-one green failure and compromise penalties.
  static RewardTable defaults() {
    std::array<Row, kRewardCategoryCount> rows{};
    rows[static_cast<std::size_t>(RewardCategory::Hq)] = {-1.0, -1.0, -3.0};
    rows[static_cast<std::size_t>(RewardCategory::Contractor)] = {0.0, -5.0, -5.0};
    rows[static_cast<std::size_t>(RewardCategory::RestrictedA)] = {-1.0, -3.0, -1.0};
    rows[static_cast<std::size_t>(RewardCategory::OperationalA)] = {-1.0, -1.0, -1.0};
    rows[static_cast<std::size_t>(RewardCategory::RestrictedB)] = {-1.0, -3.0, -1.0};
    rows[static_cast<std::size_t>(RewardCategory::OperationalB)] = {-1.0, -1.0, -1.0};
    rows[static_cast<std::size_t>(RewardCategory::Internet)] = {0.0, 0.0, 0.0};
    return RewardTable(rows);
  }

  static RewardTable zeros() { return RewardTable(std::array<Row, kRewardCategoryCount>{}); }

  double penalty(RewardCategory c, PenaltyKind k) const {
    return rows_[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
  }
  double penalty(ZoneId z, PenaltyKind k) const { return penalty(reward_category(z), k); }

  void set(RewardCategory c, PenaltyKind k, double value) {
    if (!(value <= 0.0)) throw std::invalid_argument("reward table entries must be <= 0");
    rows_[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] = value;
  }

  friend bool operator==(const RewardTable&, const RewardTable&) = default;

 private:
  std::array<Row, kRewardCategoryCount> rows_{};
};

/// Sum of the table entries for each event; 0 for an empty list.
inline double compute_shared_reward(std::span<const PenaltyEvent> events, const RewardTable& table) {
  double total = 0.0;
  for (const auto& e : events) total += table.penalty(e.zone, e.kind);
  return total;
}

}  // namespace cybermarl::env

#endif  // CYBERMARL_ENV_REWARD_HPP_
