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
#include <string>
#include <vector>

#include "imac/device.hpp"
#include "imac/layer_spec.hpp"
#include "imac/rng.hpp"

namespace imac {

enum class NoiseLevel : std::uint8_t { None, Analog, Digital };

[[nodiscard]] std::string to_string(NoiseLevel level);
// Accepts "none", "analog", "digital"; throws ConfigError otherwise.
[[nodiscard]] NoiseLevel parse_noise_level(const std::string& s);

struct NoiseSpec {
  NoiseLevel level = NoiseLevel::None;
  double sigma_analog_mv = 13.17;
  double sigma_digital_code = 0.6;
  std::uint64_t seed = 0;

  [[nodiscard]] static NoiseSpec none() { return {}; }
  [[nodiscard]] static NoiseSpec from_device(const DeviceParams& p, NoiseLevel level,
                                             std::uint64_t seed) {
    return {level, p.sigma_analog_mv, p.sigma_digital_code, seed};
  }
  void validate() const;
};

// Adds N(0, sigma_analog_mv) to a product voltage and clamps the result to
// [v_blb_floor, v_dd]. Identity unless the level is Analog.
[[nodiscard]] AnalogSample perturb_analog(AnalogSample v, const NoiseSpec& spec,
                                          const DeviceParams& params, RandomStream& rng);

// Output-code sigma of an element composed of n_groups R-element MACs:
// sigma_digital_code * sqrt(n_groups). Zero unless the level is Digital.
[[nodiscard]] double mac_error_sigma(long n_groups, const NoiseSpec& spec);

// Number of R-element windows needed for a reduction of length fan_in.
[[nodiscard]] inline long groups_for(long fan_in, int r) { return (fan_in + r - 1) / r; }

// Frozen per-output-element additive error, in summed-product units. Values
// are whole product units because the digital side of the array only ever
// sees integers.
struct ErrorMapSample {
  std::vector<long> shape;
  std::vector<long> values;
  double sigma_products = 0.0;
  bool frozen = true;

  [[nodiscard]] bool empty() const { return values.empty(); }
  [[nodiscard]] long at(std::size_t i) const { return values.empty() ? 0 : values[i]; }
};

// One Gaussian draw per output element of `layer` (N x N_mov x N_mov) with
// sigma mac_error_sigma(ceil(fan_in / R)) codes times `bin_products`.
[[nodiscard]] ErrorMapSample sample_error_map(const LayerSpec& layer, const NoiseSpec& spec,
                                              int r_amortization, double bin_products,
                                              RandomStream& rng);

// Same for an explicit element count and reduction length.
[[nodiscard]] ErrorMapSample sample_error_map(std::vector<long> shape, long fan_in,
                                              const NoiseSpec& spec, int r_amortization,
                                              double bin_products, RandomStream& rng);

}  // namespace imac
