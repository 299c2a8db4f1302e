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

#include "imac/device.hpp"
#include "imac/peripherals.hpp"
#include "imac/variation.hpp"

namespace imac {

// Array geometry. Each stored weight occupies bits_per_weight adjacent cells
// of one row: four magnitude cells (LSB first, MSB rightmost) and a sign cell.
struct ArrayConfig {
  int n_rows = 256;
  int n_cols = 256;
  int bits_per_weight = 5;
  int r_amortization = 10;

  [[nodiscard]] int weights_per_row() const { return n_cols / bits_per_weight; }
  // Throws ConfigError; r_amortization must equal params.n_acc.
  void validate(const DeviceParams& params) const;
};

// Observables of one product inside a window.
struct ElementTrace {
  SignedWord vin;
  SignedWord w;
  std::array<double, 4> blb_mv{};
  double product_mv = 0.0;  // charge-share node, after noise
  double delta_v_mv = 0.0;
  Sign routed_to = Sign::Positive;
};

// One accumulation window (<= R products) and its conversion pair.
struct WindowResult {
  AccumulatorState state;  // closed
  int code_pos = 0;
  int code_neg = 0;
  long value = 0;
  long exact = 0;
  std::vector<ElementTrace> elements;  // filled when tracing
};

struct DotResult {
  long value = 0;
  long exact = 0;
  std::vector<WindowResult> windows;
};

// Weights placed in the array: row = reduction index, column group = output.
class StoredMatrix {
 public:
  StoredMatrix() = default;

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int groups() const { return groups_; }
  [[nodiscard]] const SignedWord& at(int row, int group) const {
    return weights_[static_cast<std::size_t>(row) * static_cast<std::size_t>(groups_) +
                    static_cast<std::size_t>(group)];
  }
  // First cell column occupied by a group.
  [[nodiscard]] int first_cell(int group) const { return group * bits_per_weight_; }
  // Cell contents of one array row (n_cols entries, unused cells false).
  [[nodiscard]] std::vector<bool> row_cells(int row) const;
  [[nodiscard]] const ErrorMapSample& error_map() const { return error_map_; }
  [[nodiscard]] std::vector<SignedWord> column(int group) const;

 private:
  friend class ImacEngine;
  int rows_ = 0;
  int groups_ = 0;
  int n_cols_ = 0;
  int bits_per_weight_ = 5;
  std::vector<SignedWord> weights_;
  ErrorMapSample error_map_;
};

// Signed dot products through the analog pipeline: staggered-discharge
// product, XOR sign routing onto the dual accumulator, SAR conversion of
// both capacitors every R products, digital sum of decoded windows.
class ImacEngine {
 public:
  ImacEngine() : ImacEngine(DeviceParams{}) {}
  explicit ImacEngine(DeviceParams params);
  ImacEngine(DeviceParams params, AdcConfig adc, ArrayConfig array);

  [[nodiscard]] const DeviceParams& params() const { return params_; }
  [[nodiscard]] const AdcConfig& adc() const { return adc_; }
  [[nodiscard]] const ArrayConfig& array() const { return array_; }
  // One ADC code in summed-product units.
  [[nodiscard]] double bin_products() const { return bin_products_; }

  // vin.size() == w.size() <= R. `rng` is required when the noise level is
  // Analog. Throws ConstraintError/CapacityError from the accumulator.
  [[nodiscard]] WindowResult run_window(std::span<const SignedWord> vin,
                                        std::span<const SignedWord> w, const NoiseSpec& noise,
                                        RandomStream* rng, bool trace = false) const;

  // Arbitrary-length dot product split into ceil(len / R) windows.
  [[nodiscard]] DotResult signed_dot(std::span<const SignedWord> vin,
                                     std::span<const SignedWord> w, const NoiseSpec& noise,
                                     RandomStream* rng, bool trace = false) const;

  // Row-major placement of matrix[row][group]. Samples the per-group error
  // map from `noise` when its level is Digital. Throws PlacementError.
  [[nodiscard]] StoredMatrix store_weights(const std::vector<std::vector<SignedWord>>& matrix,
                                           const NoiseSpec& noise = {}) const;

  // Dot product of vin against column `group` of a stored matrix; adds the
  // frozen error of that group under Digital noise.
  [[nodiscard]] DotResult dot_product(std::span<const SignedWord> vin,
                                      const StoredMatrix& stored, int group,
                                      const NoiseSpec& noise, RandomStream* rng) const;

 private:
  DeviceParams params_;
  AdcConfig adc_;
  ArrayConfig array_;
  double bin_products_;
};

// Plain integer sum of sign * |v| * |w|. Throws InputDomainError on a
// length mismatch.
[[nodiscard]] long exact_mac_oracle(std::span<const SignedWord> vin,
                                    std::span<const SignedWord> w);

}  // namespace imac
