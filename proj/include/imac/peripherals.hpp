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

#include <vector>

#include "imac/device.hpp"

namespace imac {

// Dual accumulation capacitors selected by the product sign. n_pos/n_neg
// count the products routed to each side; `closed` is set once the idle
// cycles of the window have been integrated (see close_window).
struct AccumulatorState {
  double v_pos_mv = 0.0;
  double v_neg_mv = 0.0;
  int count = 0;
  int n_pos = 0;
  int n_neg = 0;
  bool closed = false;
};

// Charge dumped through M9 for one sample, as a voltage step on C_acc.
// Zero at or below the threshold.
[[nodiscard]] double accumulation_step(double sample_mv, const DeviceParams& params);

// Integrates one sample onto the capacitor chosen by `sign`. Throws
// ConstraintError when the sample is below v_th_m9 or the capacitor would
// exceed it, and CapacityError when the window already holds n_acc products.
[[nodiscard]] AccumulatorState accumulate(const AccumulatorState& state, AnalogSample sample,
                                          Sign sign, const DeviceParams& params);

// Ends the window: every capacitor integrates a precharged (zero-product)
// sample for each cycle it was not selected, so both sides always hold
// n_acc samples at conversion time and share the zero level n_acc * dV_max.
[[nodiscard]] AccumulatorState close_window(const AccumulatorState& state,
                                            const DeviceParams& params);

// Capacitors discharged after a conversion pair.
[[nodiscard]] inline AccumulatorState reset() { return {}; }

struct ConstraintReport {
  bool sample_above_threshold = false;  // minimum product sample >= v_th_m9
  double sample_slack_mv = 0.0;
  bool headroom_ok = false;             // n_acc * dV_max <= v_th_m9
  double headroom_slack_mv = 0.0;
  double worst_case_v_acc_mv = 0.0;
  double min_c_acc_ff = 0.0;            // smallest C_acc meeting the headroom bound

  [[nodiscard]] bool ok() const { return sample_above_threshold && headroom_ok; }
};

[[nodiscard]] ConstraintReport check_constraints(const DeviceParams& params);

struct AdcConfig {
  int bits = 4;
  double v_lo = 93.75;
  double v_hi = 375.0;

  void validate() const;

  [[nodiscard]] int levels() const { return 1 << bits; }
  [[nodiscard]] int max_code() const { return levels() - 1; }
  [[nodiscard]] double bin_width_mv() const { return (v_hi - v_lo) / levels(); }

  // Range spanning exactly the reachable accumulation voltages of a closed
  // window: n_acc samples at the full-scale product up to n_acc zero products.
  [[nodiscard]] static AdcConfig matched_to(const DeviceParams& params, int bits = 4);
};

// Successive-approximation conversion, one bit per cycle from the MSB.
// Out-of-range inputs clip to 0 or 2^bits - 1.
[[nodiscard]] int sar_adc(double v_in, const AdcConfig& cfg);

// clamp(floor((v - v_lo) / (v_hi - v_lo) * 2^bits), 0, 2^bits - 1)
[[nodiscard]] int quantize_closed_form(double v_in, const AdcConfig& cfg);

struct AdcBin {
  int code = 0;
  double lo_mv = 0.0;
  double hi_mv = 0.0;
  double center_mv = 0.0;
};

[[nodiscard]] std::vector<AdcBin> adc_code_table(const AdcConfig& cfg);

// Accumulation-node voltage per unit of summed product.
[[nodiscard]] double product_unit_mv(const DeviceParams& params);

// Width of one ADC code measured in summed-product units.
[[nodiscard]] double bin_width_products(const AdcConfig& cfg, const DeviceParams& params);

// Estimated summed product on one capacitor from its code (bin center),
// clipped to what n_products samples can reach. Throws InputDomainError for
// a code outside [0, 2^bits - 1].
[[nodiscard]] double decode_capacitor(int code, int n_products, const AdcConfig& cfg,
                                      const DeviceParams& params);

// Signed MAC estimate: decoded positive side minus decoded negative side,
// rounded half away from zero.
[[nodiscard]] long decode_mac(int code_pos, int code_neg, int n_pos, int n_neg,
                              const AdcConfig& cfg, const DeviceParams& params);

}  // namespace imac
