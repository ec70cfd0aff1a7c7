// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_RANDOM_HPP_
#define CYBERMARL_RANDOM_HPP_

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>

namespace cybermarl {

/// Anything that yields doubles in [0, 1). The simulator and the samplers are
/// written against this so tests can pin individual draws.
template <typename T>
concept UniformSource = requires(T& source) {
  { source.uniform() } -> std::convertible_to<double>;
};

/// SplitMix64 finalizer, used to derive independent child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) noexcept {
  return mix_seed(mix_seed(parent) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

/// Seeded 64-bit Mersenne Twister with a platform-independent mapping to [0, 1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(mix_seed(seed)) {}

  /// 53 random mantissa bits; never returns 1.0.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t next_u64() { return engine_(); }

  /// Child generator with its own stream; advances this generator by one draw.
  Rng split() { return Rng(derive_seed(engine_(), 1)); }

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::mt19937_64 engine_;
};

/// Uniform index in [0, n) from a single uniform draw. n must be positive.
template <UniformSource R>
std::size_t draw_index(R& source, std::size_t n) {
  const auto i = static_cast<std::size_t>(static_cast<double>(source.uniform()) * static_cast<double>(n));
  return std::min(i, n - 1);
}

}  // namespace cybermarl

#endif  // CYBERMARL_RANDOM_HPP_
