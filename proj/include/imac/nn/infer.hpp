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

#include <cstdint>
#include <span>
#include <vector>

#include "imac/engine.hpp"
#include "imac/nn/dataset.hpp"
#include "imac/nn/network.hpp"
#include "imac/nn/quantize.hpp"
#include "imac/variation.hpp"

namespace imac::nn {

// How conv / fc output elements are produced in the quantized network.
enum class ComputePath : std::uint8_t {
  Oracle,  // exact integer MAC
  Engine,  // ImacEngine::signed_dot, window by window
};

[[nodiscard]] ComputePath parse_compute_path(const std::string& s);

// Network with conv / fc weights quantized once.
struct QuantizedNetwork {
  NetworkSpec spec;
  QuantScheme scheme;
  std::vector<QuantizedTensor> weights;  // indexed like spec.layers
  std::vector<LayerSpec> geometry;       // one per conv / fc layer, in order
  std::vector<std::size_t> mac_layers;   // spec.layers index of each geometry entry

  // Output element count of each conv / fc layer.
  [[nodiscard]] std::vector<long> output_elements() const;
};

[[nodiscard]] QuantizedNetwork quantize_network(const NetworkSpec& spec,
                                                const QuantScheme& scheme);

// Frozen additive errors, one map per conv / fc layer, in product units.
struct ErrorMaps {
  std::vector<ErrorMapSample> layers;
  [[nodiscard]] long at(std::size_t layer, std::size_t element) const {
    return layer < layers.size() ? layers[layer].at(element) : 0;
  }
};

// Maps for one trial (a fresh weight write). Layer j of trial t draws from
// stream (noise.seed, derive_stream(derive_stream(kTrialDomain, t), j)).
// All-zero unless the noise level is Digital.
inline constexpr std::uint64_t kTrialDomain = 0x54524941ull;
[[nodiscard]] ErrorMaps sample_error_maps(const QuantizedNetwork& net, const NoiseSpec& noise,
                                          std::uint64_t trial, int r_amortization,
                                          double bin_products);

// Intermediate values of a quantized forward pass, per conv / fc layer.
struct InferenceTrace {
  std::vector<QuantizedTensor> inputs;  // quantized layer inputs (unpadded)
  std::vector<Tensor<long>> mac;        // integer results before error injection
  std::vector<Tensor<long>> injected;   // results after error injection
};

struct InferOptions {
  ComputePath path = ComputePath::Oracle;
  const ImacEngine* engine = nullptr;  // required for the engine path
  NoiseSpec noise;                      // Analog noise is honoured on the engine path only
  std::uint64_t image_index = 0;        // selects the analog noise stream
  std::uint64_t trial = 0;
};

// Float reference forward pass. `image` holds C*H*W pixels.
[[nodiscard]] std::vector<float> infer_float(const NetworkSpec& net, std::span<const float> image);

// Quantized forward pass. Each conv / fc output element is the integer MAC
// plus its frozen error; ReLU, pooling and dropout (identity) act on the
// dequantized values y = mac * s_w * s_a + bias.
[[nodiscard]] std::vector<float> infer(const QuantizedNetwork& net, std::span<const float> image,
                                       const ErrorMaps& errors, const InferOptions& opts = {},
                                       InferenceTrace* trace = nullptr);

// Index of the largest score; ties resolve to the lowest index.
[[nodiscard]] int argmax(std::span<const float> scores);

[[nodiscard]] double accuracy_float(const NetworkSpec& net, const Dataset& data,
                                    unsigned threads = 0);
[[nodiscard]] double accuracy(const QuantizedNetwork& net, const Dataset& data,
                              const ErrorMaps& errors, const InferOptions& opts = {},
                              unsigned threads = 0);

struct AccuracyBand {
  std::vector<double> per_trial;
  double mean = 0.0;
  double stddev = 0.0;  // population
  double min = 0.0;
  double max = 0.0;
};

// Runs `trials` full passes over `data`, resampling the error maps for each
// trial. The result does not depend on the thread count. Throws
// InputDomainError when trials is 0.
[[nodiscard]] AccuracyBand accuracy_band(const QuantizedNetwork& net, const Dataset& data,
                                         const NoiseSpec& noise, std::uint64_t trials,
                                         const ImacEngine& engine,
                                         ComputePath path = ComputePath::Oracle,
                                         unsigned threads = 0);

}  // namespace imac::nn
