//*****************************************************************************
// Copyright 2026 The imac-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//*****************************************************************************

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "imac/layer_spec.hpp"
#include "imac/nn/tensor.hpp"
#include "imac/nn/tensor_file.hpp"

namespace imac::nn {

enum class LayerKind : std::uint8_t { Conv, Fc, MaxPool, Relu, Dropout };

[[nodiscard]] std::string to_string(LayerKind kind);

struct LayerDef {
  LayerKind kind = LayerKind::Relu;
  std::string name;
  long out = 0;     // output maps (conv) or neurons (fc)
  long kernel = 1;  // conv kernel side, or pooling window (stride = window)
  long pad = 0;     // conv zero padding on each side

  [[nodiscard]] bool has_weights() const {
    return kind == LayerKind::Conv || kind == LayerKind::Fc;
  }
};

// Per-layer activation shape, always [C, H, W]; fully connected outputs are
// [N, 1, 1].
using Shape3 = std::array<long, 3>;

// Layer list plus bound weights. Conv weights are [N, M, K, K] and fc
// weights [out, in] (the input flattened channel-major), each with a bias
// named "<layer>.bias".
struct NetworkSpec {
  std::string name;
  Shape3 input{1, 1, 1};
  std::vector<LayerDef> layers;
  std::vector<FloatTensor> weights;  // indexed like `layers`; empty for weightless kinds
  std::vector<FloatTensor> biases;

  // Output shape of every layer. Throws ShapeError on incompatible sizes.
  [[nodiscard]] std::vector<Shape3> shapes() const;
  [[nodiscard]] Shape3 output_shape() const;
  // Shape checks plus weight presence and dimensions.
  void validate() const;
  // Geometry of each conv / fc layer for the analytical model; L is the
  // padded input side.
  [[nodiscard]] std::vector<LayerSpec> layer_specs() const;
  [[nodiscard]] bool bound() const;
};

// JSON layout:
//   {"name": "...", "input": [C, H, W],
//    "layers": [{"kind": "conv", "name": "conv1", "out": 6, "kernel": 5, "pad": 2},
//               {"kind": "relu"}, {"kind": "maxpool", "kernel": 2}, ...]}
// Unknown keys are rejected. Throws ConfigError.
[[nodiscard]] NetworkSpec parse_network_spec(const std::string& json_text);
[[nodiscard]] NetworkSpec load_network_spec(const std::string& path);

// Attaches "<name>.weight" / "<name>.bias" for every conv and fc layer.
// Throws ShapeError on missing tensors or wrong dimensions.
void bind_weights(NetworkSpec& net, const TensorMap& tensors);

// Seeded He-uniform weights and zero-mean small biases for every layer with
// weights; used for smoke fixtures where no trained weights exist.
[[nodiscard]] TensorMap random_weights(const NetworkSpec& net, std::uint64_t seed);

}  // namespace imac::nn
