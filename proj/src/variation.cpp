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

#include "imac/variation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "imac/errors.hpp"

namespace imac {

void LayerSpec::validate() const {
  if (m < 1 || n < 1 || k < 1 || l < 1 || n_mov < 1) {
    throw ConfigError("layer " + name + ": M, N, K, L, N_mov must be positive");
  }
  if (n_mov > l) throw ConfigError("layer " + name + ": N_mov exceeds L");
}

std::string to_string(NoiseLevel level) {
  switch (level) {
    case NoiseLevel::None:
      return "none";
    case NoiseLevel::Analog:
      return "analog";
    case NoiseLevel::Digital:
      return "digital";
  }
  return "none";
}

NoiseLevel parse_noise_level(const std::string& s) {
  if (s == "none") return NoiseLevel::None;
  if (s == "analog") return NoiseLevel::Analog;
  if (s == "digital") return NoiseLevel::Digital;
  throw ConfigError("unknown noise level '" + s + "' (expected none|analog|digital)");
}

void NoiseSpec::validate() const {
  if (sigma_analog_mv < 0 || sigma_digital_code < 0) {
    throw ConfigError("noise: sigmas must be non-negative");
  }
}

AnalogSample perturb_analog(AnalogSample v, const NoiseSpec& spec, const DeviceParams& params,
                            RandomStream& rng) {
  if (spec.level != NoiseLevel::Analog || spec.sigma_analog_mv == 0.0) return v;
  const double noisy = v.mv + spec.sigma_analog_mv * rng.normal();
  return {std::clamp(noisy, params.v_blb_floor, params.v_dd), v.stage};
}

double mac_error_sigma(long n_groups, const NoiseSpec& spec) {
  if (spec.level != NoiseLevel::Digital) return 0.0;
  if (n_groups < 1) throw InputDomainError("mac_error_sigma: n_groups must be >= 1");
  return spec.sigma_digital_code * std::sqrt(static_cast<double>(n_groups));
}

ErrorMapSample sample_error_map(std::vector<long> shape, long fan_in, const NoiseSpec& spec,
                                int r_amortization, double bin_products, RandomStream& rng) {
  const long count = std::accumulate(shape.begin(), shape.end(), 1L, std::multiplies<>());
  ErrorMapSample map;
  map.shape = std::move(shape);
  map.values.assign(static_cast<std::size_t>(count), 0);
  if (spec.level != NoiseLevel::Digital) return map;
  map.sigma_products = mac_error_sigma(groups_for(fan_in, r_amortization), spec) * bin_products;
  for (auto& v : map.values) v = std::lround(map.sigma_products * rng.normal());
  return map;
}

ErrorMapSample sample_error_map(const LayerSpec& layer, const NoiseSpec& spec,
                                int r_amortization, double bin_products, RandomStream& rng) {
  return sample_error_map({layer.n, layer.n_mov, layer.n_mov}, layer.fan_in(), spec,
                          r_amortization, bin_products, rng);
}

}  // namespace imac
