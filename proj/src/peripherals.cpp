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

#include "imac/peripherals.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "imac/errors.hpp"

namespace imac {

double accumulation_step(double sample_mv, const DeviceParams& params) {
  const double overdrive = sample_mv - params.v_th_m9;
  if (overdrive <= 0.0) return 0.0;
  return params.c_sample * overdrive / params.c_acc;
}

AccumulatorState accumulate(const AccumulatorState& state, AnalogSample sample, Sign sign,
                            const DeviceParams& params) {
  if (state.closed) throw CapacityError("accumulate: window already closed");
  if (state.count >= params.n_acc) {
    throw CapacityError("accumulate: window holds " + std::to_string(params.n_acc) +
                        " products");
  }
  if (sample.mv < params.v_th_m9) {
    throw ConstraintError("accumulate: sample " + std::to_string(sample.mv) +
                          " mV below v_th_m9 " + std::to_string(params.v_th_m9) + " mV");
  }
  AccumulatorState next = state;
  const double dv = accumulation_step(sample.mv, params);
  double& node = sign == Sign::Positive ? next.v_pos_mv : next.v_neg_mv;
  node += dv;
  if (node > params.v_th_m9) {
    throw ConstraintError("accumulate: accumulation node " + std::to_string(node) +
                          " mV exceeds v_th_m9");
  }
  (sign == Sign::Positive ? next.n_pos : next.n_neg) += 1;
  next.count += 1;
  return next;
}

AccumulatorState close_window(const AccumulatorState& state, const DeviceParams& params) {
  if (state.closed) return state;
  AccumulatorState next = state;
  const double idle = accumulation_step(params.v_dd, params);
  next.v_pos_mv += (params.n_acc - state.n_pos) * idle;
  next.v_neg_mv += (params.n_acc - state.n_neg) * idle;
  if (next.v_pos_mv > params.v_th_m9 || next.v_neg_mv > params.v_th_m9) {
    throw ConstraintError("close_window: accumulation node exceeds v_th_m9");
  }
  next.closed = true;
  return next;
}

ConstraintReport check_constraints(const DeviceParams& params) {
  ConstraintReport r;
  r.sample_slack_mv = params.v_product_floor - params.v_th_m9;
  r.sample_above_threshold = r.sample_slack_mv >= 0.0;
  r.worst_case_v_acc_mv = params.n_acc * accumulation_step(params.v_dd, params);
  r.headroom_slack_mv = params.v_th_m9 - r.worst_case_v_acc_mv;
  r.headroom_ok = r.headroom_slack_mv >= 0.0;
  r.min_c_acc_ff =
      params.c_sample * (params.v_dd - params.v_th_m9) * params.n_acc / params.v_th_m9;
  return r;
}

void AdcConfig::validate() const {
  if (bits < 1 || bits > 16) throw ConfigError("adc: bits must be in [1, 16]");
  if (!(v_lo < v_hi)) throw ConfigError("adc: need v_lo < v_hi");
}

AdcConfig AdcConfig::matched_to(const DeviceParams& params, int bits) {
  return {bits, params.n_acc * accumulation_step(params.v_product_floor, params),
          params.n_acc * accumulation_step(params.v_dd, params)};
}

int sar_adc(double v_in, const AdcConfig& cfg) {
  // The comparator sees the input normalized to DAC LSBs.
  const double x = (v_in - cfg.v_lo) / (cfg.v_hi - cfg.v_lo) * cfg.levels();
  int code = 0;
  for (int bit = cfg.bits - 1; bit >= 0; --bit) {
    const int trial = code | (1 << bit);
    if (x >= static_cast<double>(trial)) code = trial;
  }
  return code;
}

int quantize_closed_form(double v_in, const AdcConfig& cfg) {
  const double x = std::floor((v_in - cfg.v_lo) / (cfg.v_hi - cfg.v_lo) * cfg.levels());
  return static_cast<int>(std::clamp(x, 0.0, static_cast<double>(cfg.max_code())));
}

std::vector<AdcBin> adc_code_table(const AdcConfig& cfg) {
  std::vector<AdcBin> table;
  table.reserve(static_cast<std::size_t>(cfg.levels()));
  const double w = cfg.bin_width_mv();
  for (int c = 0; c < cfg.levels(); ++c) {
    table.push_back({c, cfg.v_lo + c * w, cfg.v_lo + (c + 1) * w, cfg.v_lo + (c + 0.5) * w});
  }
  return table;
}

double product_unit_mv(const DeviceParams& params) {
  return params.c_sample / params.c_acc * params.product_step_mv();
}

double bin_width_products(const AdcConfig& cfg, const DeviceParams& params) {
  return cfg.bin_width_mv() / product_unit_mv(params);
}

double decode_capacitor(int code, int n_products, const AdcConfig& cfg,
                        const DeviceParams& params) {
  if (code < 0 || code > cfg.max_code()) {
    throw InputDomainError("decode: code " + std::to_string(code) + " outside [0, " +
                           std::to_string(cfg.max_code()) + "]");
  }
  if (n_products <= 0) return 0.0;
  const double zero_level = params.n_acc * accumulation_step(params.v_dd, params);
  const double center = cfg.v_lo + (code + 0.5) * cfg.bin_width_mv();
  const double estimate = (zero_level - center) / product_unit_mv(params);
  return std::clamp(estimate, 0.0, static_cast<double>(kMaxProduct) * n_products);
}

long decode_mac(int code_pos, int code_neg, int n_pos, int n_neg, const AdcConfig& cfg,
                const DeviceParams& params) {
  const double diff = decode_capacitor(code_pos, n_pos, cfg, params) -
                      decode_capacitor(code_neg, n_neg, cfg, params);
  return std::lround(diff);
}

}  // namespace imac
