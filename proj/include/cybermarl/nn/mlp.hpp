// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_NN_MLP_HPP_
#define CYBERMARL_NN_MLP_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cybermarl/random.hpp"

namespace cybermarl::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// y = W x + b, W is (out x in).
struct DenseLayer {
  Matrix weight;
  Vector bias;

  friend bool operator==(const DenseLayer& a, const DenseLayer& b) {
    return a.weight.rows() == b.weight.rows() && a.weight.cols() == b.weight.cols() &&
           a.bias.size() == b.bias.size() && a.weight == b.weight && a.bias == b.bias;
  }
};

/// Multilayer perceptron: ReLU on hidden layers, identity on the output layer.
struct MlpParams {
  std::vector<DenseLayer> layers;

  std::size_t input_dim() const { return static_cast<std::size_t>(layers.front().weight.cols()); }
  std::size_t output_dim() const { return static_cast<std::size_t>(layers.back().weight.rows()); }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    if (layers.empty()) return out;
    out.push_back(input_dim());
    for (const auto& l : layers) out.push_back(static_cast<std::size_t>(l.weight.rows()));
    return out;
  }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
    return n;
  }

  friend bool operator==(const MlpParams&, const MlpParams&) = default;
};

/// Same layout as MlpParams, holding d(loss)/d(parameter).
struct Grads {
  std::vector<DenseLayer> layers;

  static Grads zeros_like(const MlpParams& p) {
    Grads g;
    for (const auto& l : p.layers) {
      g.layers.push_back({Matrix::Zero(l.weight.rows(), l.weight.cols()), Vector::Zero(l.bias.size())});
    }
    return g;
  }

  bool all_finite() const {
    for (const auto& l : layers) {
      if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
    }
    return true;
  }

  Grads& operator+=(const Grads& other) {
    for (std::size_t i = 0; i < layers.size(); ++i) {
      layers[i].weight += other.layers[i].weight;
      layers[i].bias += other.layers[i].bias;
    }
    return *this;
  }
};

/// Activations of one forward pass; columns are samples. activations[0] is the
/// input, pre_activations[k] feeds layer k's nonlinearity.
struct LayerCache {
  std::vector<Matrix> activations;
  std::vector<Matrix> pre_activations;
};

struct ForwardResult {
  Matrix output;
  LayerCache cache;
};

/// Glorot-uniform weights, zero biases.
inline MlpParams mlp_init(const std::vector<std::size_t>& dims, std::uint64_t seed) {
  if (dims.size() < 2) throw std::invalid_argument("mlp_init needs at least input and output dims");
  for (auto d : dims) {
    if (d < 1) throw std::invalid_argument("mlp_init: every dim must be >= 1");
  }
  Rng rng(seed);
  MlpParams p;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    const auto fan_in = static_cast<Eigen::Index>(dims[k]);
    const auto fan_out = static_cast<Eigen::Index>(dims[k + 1]);
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    DenseLayer layer{Matrix(fan_out, fan_in), Vector::Zero(fan_out)};
    for (Eigen::Index c = 0; c < fan_in; ++c) {
      for (Eigen::Index r = 0; r < fan_out; ++r) layer.weight(r, c) = (2.0 * rng.uniform() - 1.0) * limit;
    }
    p.layers.push_back(std::move(layer));
  }
  return p;
}

/// Batched forward pass; each column of `x` is one sample.
inline ForwardResult forward(const MlpParams& params, const Matrix& x) {
  if (params.layers.empty()) throw std::invalid_argument("forward: empty network");
  if (static_cast<std::size_t>(x.rows()) != params.input_dim()) {
    throw std::invalid_argument("forward: input has " + std::to_string(x.rows()) + " rows, network expects " +
                                std::to_string(params.input_dim()));
  }
  ForwardResult out;
  out.cache.activations.reserve(params.layers.size() + 1);
  out.cache.pre_activations.reserve(params.layers.size());
  out.cache.activations.push_back(x);
  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    const auto& layer = params.layers[k];
    Matrix z = layer.weight * out.cache.activations.back();
    z.colwise() += layer.bias;
    const bool hidden = k + 1 < params.layers.size();
    Matrix a = hidden ? Matrix(z.cwiseMax(0.0)) : z;
    out.cache.pre_activations.push_back(std::move(z));
    out.cache.activations.push_back(std::move(a));
  }
  out.output = out.cache.activations.back();
  return out;
}

inline ForwardResult forward(const MlpParams& params, const Vector& x) { return forward(params, Matrix(x)); }

/// Reverse-mode gradient of sum(output .* grad_output) with respect to every
/// parameter, summed over the batch. ReLU'(0) is taken as 0.
inline Grads backward(const MlpParams& params, const LayerCache& cache, const Matrix& grad_output) {
  const std::size_t n_layers = params.layers.size();
  if (cache.pre_activations.size() != n_layers || cache.activations.size() != n_layers + 1) {
    throw std::invalid_argument("backward: cache does not match the network depth");
  }
  const Matrix& last = cache.activations.back();
  if (grad_output.rows() != last.rows() || grad_output.cols() != last.cols()) {
    throw std::invalid_argument("backward: grad_output shape does not match the forward output");
  }
  Grads g;
  g.layers.resize(n_layers);
  Matrix delta = grad_output;
  for (std::size_t k = n_layers; k-- > 0;) {
    if (k + 1 < n_layers) {
      delta = delta.cwiseProduct((cache.pre_activations[k].array() > 0.0).cast<double>().matrix());
    }
    g.layers[k].weight = delta * cache.activations[k].transpose();
    g.layers[k].bias = delta.rowwise().sum();
    if (k > 0) delta = params.layers[k].weight.transpose() * delta;
  }
  return g;
}

}  // namespace cybermarl::nn

#endif  // CYBERMARL_NN_MLP_HPP_
