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

#include "imac/nn/quantize.hpp"

#include <algorithm>
#include <cmath>

#include "imac/errors.hpp"

namespace imac::nn {

void QuantScheme::validate() const {
  if (weight_bits < 2 || activation_bits < 2) throw ConfigError("quantization needs >= 2 bits");
  if (weight_bits > 16 || activation_bits > 16) throw ConfigError("quantization limited to 16 bits");
  if (!symmetric) throw ConfigError("only symmetric quantization is supported");
}

std::vector<float> QuantizedTensor::dequantized() const {
  std::vector<float> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = dequantize(i);
  return out;
}

long round_half_away(double x) { return std::lround(x); }

double symmetric_scale(std::span<const float> x, int bits) {
  if (bits < 2) throw ConfigError("quantization needs >= 2 bits");
  double peak = 0.0;
  for (float v : x) peak = std::max(peak, std::fabs(static_cast<double>(v)));
  if (peak == 0.0) return 1.0;
  return peak / QuantScheme::max_magnitude(bits);
}

QuantizedTensor quantize_linear(std::span<const float> x, int bits, std::vector<long> shape) {
  QuantizedTensor t;
  t.bits = bits;
  t.scale = symmetric_scale(x, bits);
  t.shape = shape.empty() ? std::vector<long>{static_cast<long>(x.size())} : std::move(shape);
  const long cap = QuantScheme::max_magnitude(bits);
  t.q.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long v = round_half_away(static_cast<double>(x[i]) / t.scale);
    t.q[i] = static_cast<int>(std::clamp(v, -cap, cap));
  }
  return t;
}

}  // namespace imac::nn
