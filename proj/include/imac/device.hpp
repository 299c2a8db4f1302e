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
#include <bitset>
#include <cstdint>

namespace imac {

inline constexpr int kMagnitudeBits = 4;
inline constexpr int kMaxMagnitude = (1 << kMagnitudeBits) - 1;  // 15
inline constexpr int kMaxProduct = kMaxMagnitude * kMaxMagnitude;  // 225

// Analog constants of the bitcell column, the sample/hold stage and the
// accumulator. Voltages in mV, capacitances in fF, time in units of tau.
struct DeviceParams {
  double v_dd = 1200.0;
  double v_wl_min = 300.0;   // wordline amplitude for Vin = 0
  double v_wl_max = 1000.0;  // wordline amplitude for Vin = 15 (DAC ceiling)
  double v_blb_floor = 350.0;
  // Full-scale discharge endpoints, MSB first.
  std::array<double, 4> blb_targets{350.0, 775.0, 987.5, 1093.75};
  // Charge-share node voltage at the full-scale product 15 x 15.
  double v_product_floor = 750.0;
  double c_bitline = 50.0;
  double c_sample = 2.5;
  double c_acc = 40.0;
  double v_th_m9 = 600.0;
  int n_acc = 10;
  double sigma_analog_mv = 13.17;
  double sigma_digital_code = 0.6;

  // Throws ConfigError when a structural invariant is broken. The
  // accumulator headroom constraints are reported by check_constraints()
  // instead, since sizing studies deliberately explore violating values.
  void validate() const;

  // mV of charge-share discharge per unit of |vin * w|.
  [[nodiscard]] double product_step_mv() const {
    return (v_dd - v_product_floor) / kMaxProduct;
  }
};

enum class Sign : std::int8_t { Positive = 1, Negative = -1 };

[[nodiscard]] constexpr Sign operator*(Sign a, Sign b) {
  return a == b ? Sign::Positive : Sign::Negative;
}

[[nodiscard]] constexpr int to_int(Sign s) { return static_cast<int>(s); }

// Sign-magnitude operand: a sign bit and a 4-bit magnitude. Zero may carry
// either sign; the sign is ignored when comparing zero values.
class SignedWord {
 public:
  constexpr SignedWord() = default;

  // Throws InputDomainError when |value| > 15.
  explicit SignedWord(int value);
  SignedWord(Sign sign, int magnitude);

  [[nodiscard]] constexpr Sign sign() const { return sign_; }
  [[nodiscard]] constexpr int magnitude() const { return magnitude_; }
  [[nodiscard]] constexpr int value() const { return to_int(sign_) * magnitude_; }
  [[nodiscard]] SignedWord negated() const {
    return {sign_ == Sign::Positive ? Sign::Negative : Sign::Positive, magnitude_};
  }
  [[nodiscard]] std::bitset<4> magnitude_bits() const {
    return std::bitset<4>(static_cast<unsigned>(magnitude_));
  }

  friend constexpr bool operator==(SignedWord a, SignedWord b) {
    return a.value() == b.value();
  }

 private:
  Sign sign_ = Sign::Positive;
  int magnitude_ = 0;
};

// Pipeline stage a voltage was observed at.
enum class Stage : std::uint8_t { Bitline, ChargeShare, SampleNode, AccumulationNode };

struct AnalogSample {
  double mv = 0.0;
  Stage stage = Stage::ChargeShare;
};

struct WordlineDrive {
  double amplitude_mv = 0.0;
  double duration_tau = 8.0;
};

// Wordline DAC: 300 + vin * 700 / 15 mV with the default span. Throws
// InputDomainError for vin outside [0, 15].
[[nodiscard]] WordlineDrive dac_map(int vin, const DeviceParams& params);

// Normalized access-transistor discharge rate for a wordline amplitude:
// 0 at the cutoff amplitude, 1 at the DAC ceiling. Linear in overdrive.
[[nodiscard]] double discharge_rate(double amplitude_mv, const DeviceParams& params);

// Charge-share node voltage v_dd - step * vin * w.
[[nodiscard]] AnalogSample ideal_product_voltage(int vin, int w, const DeviceParams& params);

// Per-bitline state of one staggered-precharge multiplication. Arrays are
// indexed by weight bit: [0] = LSB ... [3] = MSB.
struct DischargeTrace {
  std::array<double, 4> release_tau{};  // precharge release instant
  std::array<double, 4> active_tau{};   // time the bitline is allowed to discharge
  std::array<double, 4> blb_mv{};       // bitline voltage at the end of the WL pulse
  double raw_share_mv = 0.0;            // mean of the four bitlines
  AnalogSample product;                 // after full-scale recalibration
};

// Simulates the four bitlines of one 4-bit weight: bitline i is released
// from precharge so that, at full-scale vin, it discharges exactly to its
// endpoint; the discharge scales with the wordline rate. The shared node is
// then mapped affinely so its full-scale value is v_product_floor.
[[nodiscard]] DischargeTrace staggered_discharge(int vin, std::bitset<4> w_bits,
                                                 const DeviceParams& params);

[[nodiscard]] AnalogSample staggered_discharge_product(int vin, std::bitset<4> w_bits,
                                                       const DeviceParams& params);

}  // namespace imac
