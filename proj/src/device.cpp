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

#include "imac/device.hpp"

#include <string>

#include "imac/errors.hpp"

namespace imac {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("device params: " + what);
}

void check_magnitude(int v, const char* name) {
  if (v < 0 || v > kMaxMagnitude) {
    throw InputDomainError(std::string(name) + " = " + std::to_string(v) +
                           " outside [0, 15]");
  }
}

// Endpoint for weight bit `bit` (0 = LSB); the target table is MSB first.
double target_for_bit(const DeviceParams& p, int bit) {
  return p.blb_targets[static_cast<std::size_t>(3 - bit)];
}

}  // namespace

void DeviceParams::validate() const {
  require(v_dd > 0 && v_wl_min > 0 && v_wl_max > 0 && v_blb_floor > 0 &&
              v_product_floor > 0 && v_th_m9 > 0,
          "voltages must be positive");
  require(c_bitline > 0 && c_sample > 0 && c_acc > 0, "capacitances must be positive");
  require(v_blb_floor < v_dd, "v_blb_floor must be below v_dd");
  require(v_wl_min < v_wl_max && v_wl_max <= v_dd, "need v_wl_min < v_wl_max <= v_dd");
  require(v_product_floor < v_dd, "v_product_floor must be below v_dd");
  for (std::size_t i = 1; i < blb_targets.size(); ++i) {
    require(blb_targets[i - 1] < blb_targets[i], "blb_targets must be strictly increasing");
  }
  require(blb_targets[0] == v_blb_floor, "blb_targets[0] must equal v_blb_floor");
  require(blb_targets[3] < v_dd, "blb_targets must lie below v_dd");
  require(c_sample <= c_acc, "c_sample must not exceed c_acc");
  require(n_acc >= 1, "n_acc must be at least 1");
  require(sigma_analog_mv >= 0 && sigma_digital_code >= 0, "sigmas must be non-negative");
}

SignedWord::SignedWord(int value)
    : sign_(value < 0 ? Sign::Negative : Sign::Positive), magnitude_(value < 0 ? -value : value) {
  check_magnitude(magnitude_, "magnitude");
}

SignedWord::SignedWord(Sign sign, int magnitude) : sign_(sign), magnitude_(magnitude) {
  check_magnitude(magnitude, "magnitude");
}

WordlineDrive dac_map(int vin, const DeviceParams& params) {
  check_magnitude(vin, "vin");
  const double span = params.v_wl_max - params.v_wl_min;
  return {params.v_wl_min + vin * span / kMaxMagnitude, 8.0};
}

double discharge_rate(double amplitude_mv, const DeviceParams& params) {
  if (amplitude_mv <= params.v_wl_min) return 0.0;
  const double rate = (amplitude_mv - params.v_wl_min) / (params.v_wl_max - params.v_wl_min);
  return rate > 1.0 ? 1.0 : rate;
}

AnalogSample ideal_product_voltage(int vin, int w, const DeviceParams& params) {
  check_magnitude(vin, "vin");
  check_magnitude(w, "w");
  return {params.v_dd - params.product_step_mv() * vin * w, Stage::ChargeShare};
}

DischargeTrace staggered_discharge(int vin, std::bitset<4> w_bits, const DeviceParams& params) {
  const WordlineDrive drive = dac_map(vin, params);
  const double rate = discharge_rate(drive.amplitude_mv, params);
  // Full-scale slope: v_dd -> v_blb_floor over the whole pulse.
  const double slope = (params.v_dd - params.v_blb_floor) / drive.duration_tau;

  DischargeTrace t;
  double sum = 0.0;
  double full_scale_sum = 0.0;
  for (int bit = 0; bit < 4; ++bit) {
    const auto b = static_cast<std::size_t>(bit);
    const double full_drop = params.v_dd - target_for_bit(params, bit);
    t.active_tau[b] = full_drop / slope;
    t.release_tau[b] = drive.duration_tau - t.active_tau[b];
    const double drop = w_bits[b] ? rate * slope * t.active_tau[b] : 0.0;
    t.blb_mv[b] = params.v_dd - drop;
    sum += t.blb_mv[b];
    full_scale_sum += params.v_dd - full_drop;
  }
  // Equal bitline capacitances: charge sharing settles at the mean.
  t.raw_share_mv = sum / 4.0;

  const double raw_full_scale = full_scale_sum / 4.0;
  const double gain = (params.v_dd - params.v_product_floor) / (params.v_dd - raw_full_scale);
  t.product = {params.v_dd - gain * (params.v_dd - t.raw_share_mv), Stage::ChargeShare};
  return t;
}

AnalogSample staggered_discharge_product(int vin, std::bitset<4> w_bits,
                                         const DeviceParams& params) {
  return staggered_discharge(vin, w_bits, params).product;
}

}  // namespace imac
