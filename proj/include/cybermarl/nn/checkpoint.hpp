// Copyright 2026 The cybermarl Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CYBERMARL_NN_CHECKPOINT_HPP_
#define CYBERMARL_NN_CHECKPOINT_HPP_

#include <cstdlib>
#include <fstream>
#include <ios>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cybermarl/nn/mlp.hpp"

namespace cybermarl::nn {

// Text checkpoint, values as C99 hex floats so doubles round-trip bit-exactly:
//
//   cybermarl-mlp 1
//   layers <L>
//   weight <k> <rows> <cols>
//   <rows*cols values, row-major>
//   bias <k> <n>
//   <n values>
//   ...

inline constexpr int kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void save_checkpoint(std::ostream& out, const MlpParams& params) {
  out << "cybermarl-mlp " << kCheckpointVersion << '\n' << "layers " << params.layers.size() << '\n';
  out << std::hexfloat;
  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    const auto& l = params.layers[k];
    out << "weight " << k << ' ' << l.weight.rows() << ' ' << l.weight.cols() << '\n';
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) out << (c ? " " : "") << l.weight(r, c);
      out << '\n';
    }
    out << "bias " << k << ' ' << l.bias.size() << '\n';
    for (Eigen::Index i = 0; i < l.bias.size(); ++i) out << (i ? " " : "") << l.bias(i);
    out << '\n';
  }
  out << std::defaultfloat;
}

namespace detail {

inline double read_hex_double(std::istream& in) {
  std::string token;
  if (!(in >> token)) throw CheckpointError("checkpoint truncated");
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size()) throw CheckpointError("bad value '" + token + "'");
  return v;
}

inline void expect(std::istream& in, const std::string& word) {
  std::string token;
  if (!(in >> token) || token != word) throw CheckpointError("expected '" + word + "' in checkpoint");
}

template <typename T>
T read_number(std::istream& in) {
  T v{};
  if (!(in >> v)) throw CheckpointError("checkpoint truncated");
  return v;
}

}  // namespace detail

inline MlpParams load_checkpoint(std::istream& in) {
  detail::expect(in, "cybermarl-mlp");
  const int version = detail::read_number<int>(in);
  if (version != kCheckpointVersion) throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  detail::expect(in, "layers");
  const auto n_layers = detail::read_number<std::size_t>(in);
  MlpParams p;
  for (std::size_t k = 0; k < n_layers; ++k) {
    detail::expect(in, "weight");
    if (detail::read_number<std::size_t>(in) != k) throw CheckpointError("layer index out of order");
    const auto rows = detail::read_number<Eigen::Index>(in);
    const auto cols = detail::read_number<Eigen::Index>(in);
    DenseLayer layer{Matrix(rows, cols), Vector()};
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) layer.weight(r, c) = detail::read_hex_double(in);
    }
    detail::expect(in, "bias");
    if (detail::read_number<std::size_t>(in) != k) throw CheckpointError("layer index out of order");
    const auto n = detail::read_number<Eigen::Index>(in);
    if (n != rows) throw CheckpointError("bias length does not match weight rows");
    layer.bias.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) layer.bias(i) = detail::read_hex_double(in);
    if (!p.layers.empty() && p.layers.back().weight.rows() != cols) {
      throw CheckpointError("layer shapes do not chain");
    }
    p.layers.push_back(std::move(layer));
  }
  return p;
}

inline void save_checkpoint(const std::string& path, const MlpParams& params) {
  std::ofstream out(path);
  if (!out) throw CheckpointError("cannot write '" + path + "'");
  save_checkpoint(out, params);
}

inline MlpParams load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot read '" + path + "'");
  return load_checkpoint(in);
}

}  // namespace cybermarl::nn

#endif  // CYBERMARL_NN_CHECKPOINT_HPP_
