// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_NN_ADAM_HPP_
#define CYBERMARL_NN_ADAM_HPP_

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "cybermarl/nn/mlp.hpp"

namespace cybermarl::nn {

struct AdamState {
  Grads first_moment;
  Grads second_moment;
  std::int64_t t = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  static AdamState for_params(const MlpParams& p) {
    return {Grads::zeros_like(p), Grads::zeros_like(p)};
  }
};

/// One bias-corrected Adam step, minimizing. Throws before touching anything
/// when a gradient is not finite.
inline void adam_step(MlpParams& params, const Grads& grads, AdamState& state, double lr) {
  if (grads.layers.size() != params.layers.size() || state.first_moment.layers.size() != params.layers.size()) {
    throw std::invalid_argument("adam_step: gradient/optimizer layout does not match parameters");
  }
  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    const auto& p = params.layers[k];
    const auto& g = grads.layers[k];
    if (g.weight.rows() != p.weight.rows() || g.weight.cols() != p.weight.cols() || g.bias.size() != p.bias.size()) {
      throw std::invalid_argument("adam_step: gradient shape mismatch at layer " + std::to_string(k));
    }
  }
  if (!grads.all_finite()) throw std::domain_error("adam_step: non-finite gradient");

  ++state.t;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  auto update = [&](auto& param, const auto& grad, auto& m, auto& v) {
    m = state.beta1 * m + (1.0 - state.beta1) * grad;
    v = state.beta2 * v + (1.0 - state.beta2) * grad.cwiseProduct(grad);
    param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + state.eps);
  };
  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    auto& m = state.first_moment.layers[k];
    auto& v = state.second_moment.layers[k];
    update(params.layers[k].weight, grads.layers[k].weight, m.weight, v.weight);
    update(params.layers[k].bias, grads.layers[k].bias, m.bias, v.bias);
  }
}

}  // namespace cybermarl::nn

#endif  // CYBERMARL_NN_ADAM_HPP_
