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

#include "imac/engine.hpp"

#include <algorithm>
#include <string>

#include "imac/errors.hpp"

namespace imac {

void ArrayConfig::validate(const DeviceParams& params) const {
  if (n_rows < 1 || n_cols < 1 || bits_per_weight < 1 || r_amortization < 1) {
    throw ConfigError("array: dimensions must be positive");
  }
  if (bits_per_weight != kMagnitudeBits + 1) {
    throw ConfigError("array: bits_per_weight must be 4 magnitude cells + 1 sign cell");
  }
  if (weights_per_row() < 1) throw ConfigError("array: fewer columns than one weight");
  if (r_amortization != params.n_acc) {
    throw ConfigError("array: r_amortization must equal n_acc");
  }
}

std::vector<bool> StoredMatrix::row_cells(int row) const {
  std::vector<bool> cells(static_cast<std::size_t>(n_cols_), false);
  for (int g = 0; g < groups_; ++g) {
    const SignedWord& w = at(row, g);
    const auto base = static_cast<std::size_t>(first_cell(g));
    for (std::size_t b = 0; b < kMagnitudeBits; ++b) cells[base + b] = w.magnitude_bits()[b];
    cells[base + kMagnitudeBits] = w.sign() == Sign::Negative;
  }
  return cells;
}

std::vector<SignedWord> StoredMatrix::column(int group) const {
  std::vector<SignedWord> col;
  col.reserve(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) col.push_back(at(r, group));
  return col;
}

ImacEngine::ImacEngine(DeviceParams params)
    : ImacEngine(params, AdcConfig::matched_to(params), ArrayConfig{.r_amortization = params.n_acc}) {}

ImacEngine::ImacEngine(DeviceParams params, AdcConfig adc, ArrayConfig array)
    : params_(params), adc_(adc), array_(array) {
  params_.validate();
  adc_.validate();
  array_.validate(params_);
  bin_products_ = bin_width_products(adc_, params_);
}

WindowResult ImacEngine::run_window(std::span<const SignedWord> vin,
                                    std::span<const SignedWord> w, const NoiseSpec& noise,
                                    RandomStream* rng, bool trace) const {
  if (vin.size() != w.size()) {
    throw InputDomainError("run_window: operand lengths differ (" + std::to_string(vin.size()) +
                           " vs " + std::to_string(w.size()) + ")");
  }
  if (vin.size() > static_cast<std::size_t>(array_.r_amortization)) {
    throw CapacityError("run_window: more than R products in one window");
  }
  if (noise.level == NoiseLevel::Analog && rng == nullptr) {
    throw ConfigError("run_window: analog noise requires a random stream");
  }
  WindowResult result;
  AccumulatorState state;
  for (std::size_t i = 0; i < vin.size(); ++i) {
    const DischargeTrace d =
        staggered_discharge(vin[i].magnitude(), w[i].magnitude_bits(), params_);
    AnalogSample product = d.product;
    if (noise.level == NoiseLevel::Analog) product = perturb_analog(product, noise, params_, *rng);
    const Sign sign = vin[i].sign() * w[i].sign();
    state = accumulate(state, product, sign, params_);
    result.exact += static_cast<long>(to_int(sign)) * vin[i].magnitude() * w[i].magnitude();
    if (trace) {
      result.elements.push_back(
          {vin[i], w[i], d.blb_mv, product.mv, accumulation_step(product.mv, params_), sign});
    }
  }
  result.state = close_window(state, params_);
  result.code_pos = sar_adc(result.state.v_pos_mv, adc_);
  result.code_neg = sar_adc(result.state.v_neg_mv, adc_);
  result.value = decode_mac(result.code_pos, result.code_neg, result.state.n_pos,
                            result.state.n_neg, adc_, params_);
  return result;
}

DotResult ImacEngine::signed_dot(std::span<const SignedWord> vin, std::span<const SignedWord> w,
                                 const NoiseSpec& noise, RandomStream* rng, bool trace) const {
  if (vin.size() != w.size()) {
    throw InputDomainError("signed_dot: operand lengths differ (" + std::to_string(vin.size()) +
                           " vs " + std::to_string(w.size()) + ")");
  }
  DotResult out;
  const auto r = static_cast<std::size_t>(array_.r_amortization);
  for (std::size_t start = 0; start < vin.size(); start += r) {
    const std::size_t len = std::min(r, vin.size() - start);
    WindowResult win = run_window(vin.subspan(start, len), w.subspan(start, len), noise, rng, trace);
    out.value += win.value;
    out.exact += win.exact;
    out.windows.push_back(std::move(win));
  }
  return out;
}

StoredMatrix ImacEngine::store_weights(const std::vector<std::vector<SignedWord>>& matrix,
                                       const NoiseSpec& noise) const {
  const auto rows = matrix.size();
  const auto groups = rows == 0 ? std::size_t{0} : matrix.front().size();
  if (rows > static_cast<std::size_t>(array_.n_rows)) {
    throw PlacementError("store_weights: " + std::to_string(rows) + " rows exceed the array's " +
                         std::to_string(array_.n_rows));
  }
  if (groups > static_cast<std::size_t>(array_.weights_per_row())) {
    throw PlacementError("store_weights: " + std::to_string(groups) +
                         " weights per row exceed capacity " +
                         std::to_string(array_.weights_per_row()));
  }
  StoredMatrix s;
  s.rows_ = static_cast<int>(rows);
  s.groups_ = static_cast<int>(groups);
  s.n_cols_ = array_.n_cols;
  s.bits_per_weight_ = array_.bits_per_weight;
  s.weights_.reserve(rows * groups);
  for (const auto& row : matrix) {
    if (row.size() != groups) throw PlacementError("store_weights: ragged matrix");
    s.weights_.insert(s.weights_.end(), row.begin(), row.end());
  }
  if (noise.level == NoiseLevel::Digital && rows > 0) {
    RandomStream rng(noise.seed, derive_stream(0x53544f5245ull, rows * 4096 + groups));
    s.error_map_ = sample_error_map({static_cast<long>(groups)}, static_cast<long>(rows), noise,
                                    array_.r_amortization, bin_products_, rng);
  }
  return s;
}

DotResult ImacEngine::dot_product(std::span<const SignedWord> vin, const StoredMatrix& stored,
                                  int group, const NoiseSpec& noise, RandomStream* rng) const {
  if (group < 0 || group >= stored.groups()) {
    throw InputDomainError("dot_product: group " + std::to_string(group) + " out of range");
  }
  if (vin.size() != static_cast<std::size_t>(stored.rows())) {
    throw InputDomainError("dot_product: vin length " + std::to_string(vin.size()) +
                           " does not match " + std::to_string(stored.rows()) + " stored rows");
  }
  const std::vector<SignedWord> col = stored.column(group);
  DotResult out = signed_dot(vin, col, noise, rng);
  if (noise.level == NoiseLevel::Digital) {
    out.value += stored.error_map().at(static_cast<std::size_t>(group));
  }
  return out;
}

long exact_mac_oracle(std::span<const SignedWord> vin, std::span<const SignedWord> w) {
  if (vin.size() != w.size()) {
    throw InputDomainError("exact_mac_oracle: operand lengths differ");
  }
  long sum = 0;
  for (std::size_t i = 0; i < vin.size(); ++i) sum += static_cast<long>(vin[i].value()) * w[i].value();
  return sum;
}

}  // namespace imac
