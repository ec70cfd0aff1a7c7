// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_NN_CATEGORICAL_HPP_
#define CYBERMARL_NN_CATEGORICAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cybermarl/nn/mlp.hpp"
#include "cybermarl/random.hpp"

namespace cybermarl::nn {

namespace detail {

inline void check_mask(const Vector& logits, const std::vector<bool>& mask) {
  if (static_cast<std::size_t>(logits.size()) != mask.size()) {
    throw std::invalid_argument("mask length does not match logits");
  }
  if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; })) {
    throw std::invalid_argument("action mask has no legal entry");
  }
}

inline double masked_max(const Vector& logits, const std::vector<bool>& mask) {
  double m = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < logits.size(); ++i) {
    if (mask[static_cast<std::size_t>(i)]) m = std::max(m, logits(i));
  }
  return m;
}

}  // namespace detail

/// Softmax over the legal entries; masked entries get exactly 0.
inline Vector masked_softmax(const Vector& logits, const std::vector<bool>& mask) {
  detail::check_mask(logits, mask);
  const double m = detail::masked_max(logits, mask);
  Vector p = Vector::Zero(logits.size());
  double total = 0.0;
  for (Eigen::Index i = 0; i < logits.size(); ++i) {
    if (mask[static_cast<std::size_t>(i)]) {
      p(i) = std::exp(logits(i) - m);
      total += p(i);
    }
  }
  return p / total;
}

/// log softmax over legal entries; -inf on masked entries.
inline Vector masked_log_softmax(const Vector& logits, const std::vector<bool>& mask) {
  detail::check_mask(logits, mask);
  const double m = detail::masked_max(logits, mask);
  double total = 0.0;
  for (Eigen::Index i = 0; i < logits.size(); ++i) {
    if (mask[static_cast<std::size_t>(i)]) total += std::exp(logits(i) - m);
  }
  const double log_z = m + std::log(total);
  Vector out(logits.size());
  for (Eigen::Index i = 0; i < logits.size(); ++i) {
    out(i) = mask[static_cast<std::size_t>(i)] ? logits(i) - log_z : -std::numeric_limits<double>::infinity();
  }
  return out;
}

/// Inverse-CDF sampling from one uniform draw. Zero-probability entries are
/// never returned.
template <UniformSource R>
std::size_t sample_categorical(const Vector& probs, R& source) {
  const double u = source.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (probs(i) <= 0.0) continue;
    cumulative += probs(i);
    last_positive = static_cast<std::size_t>(i);
    if (u < cumulative) return last_positive;
  }
  return last_positive;
}

}  // namespace cybermarl::nn

#endif  // CYBERMARL_NN_CATEGORICAL_HPP_
