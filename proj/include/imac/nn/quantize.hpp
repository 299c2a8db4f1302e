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

#include <span>
#include <vector>

namespace imac::nn {

// Linear quantization settings. Bit widths include the sign, so 5 bits give
// magnitudes up to 15.
struct QuantScheme {
  int weight_bits = 5;
  int activation_bits = 5;
  bool symmetric = true;

  // Throws ConfigError when a width is below 2 or the scheme is asymmetric.
  void validate() const;
  [[nodiscard]] static int max_magnitude(int bits) { return (1 << (bits - 1)) - 1; }
};

struct QuantizedTensor {
  std::vector<long> shape;
  std::vector<int> q;  // signed values; |q| <= 2^(bits-1) - 1
  double scale = 1.0;
  int bits = 0;

  [[nodiscard]] float dequantize(std::size_t i) const {
    return static_cast<float>(static_cast<double>(q[i]) * scale);
  }
  [[nodiscard]] std::vector<float> dequantized() const;
};

// Rounds half away from zero.
[[nodiscard]] long round_half_away(double x);

// scale = max|x| / (2^(bits-1) - 1), q = round(x / scale). An all-zero
// tensor gets scale 1. Throws ConfigError when bits < 2.
[[nodiscard]] double symmetric_scale(std::span<const float> x, int bits);
[[nodiscard]] QuantizedTensor quantize_linear(std::span<const float> x, int bits,
                                              std::vector<long> shape = {});

}  // namespace imac::nn
