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

#include <string>
#include <vector>

#include "imac/layer_spec.hpp"
#include "imac/units.hpp"

namespace imac::perf {

using units::Nanojoules;
using units::Nanoseconds;
using units::Nanowatts;
using units::PicojouleNanoseconds;
using units::Picojoules;

// Architecture and circuit parameters of the analytical model.
struct PerfParams {
  double b_io = 16;     // bits fetched from SRAM per bank per access
  double b_w = 5;       // stored weight width
  double n_bank = 4;
  double n_col = 256;
  double n_mult = 175;  // processor multipliers
  Nanoseconds t_read{4.0};
  Nanoseconds t_mult{4.0};
  Nanoseconds t_amac{1.0};
  Nanoseconds t_adc{5.0};
  Picojoules e_read{5.2};
  Picojoules e_mult{0.9};
  Picojoules e_amac{0.254};
  Picojoules e_adc{0.253};
  Nanowatts p_leak{2.4};
  double r = 10;  // analog MACs per ADC conversion

  // When set, array-occupancy fractions are rounded up to whole accesses.
  bool ceil_occupancy = false;

  // Throws ConfigError unless every field is strictly positive.
  void validate() const;
};

// von Neumann baseline delay: weight fetch through the B_IO port plus the
// multiplier bank over every output position.
[[nodiscard]] Nanoseconds vn_delay(const LayerSpec& layer, const PerfParams& p);
[[nodiscard]] Picojoules vn_energy(const LayerSpec& layer, const PerfParams& p, Nanoseconds t_vn);

// In-memory delay and energy with one ADC conversion per R analog MACs.
[[nodiscard]] Nanoseconds imac_delay(const LayerSpec& layer, const PerfParams& p);
[[nodiscard]] Picojoules imac_energy(const LayerSpec& layer, const PerfParams& p, Nanoseconds t);

struct LayerReport {
  std::string name;
  Nanoseconds t_vn;
  Picojoules e_vn;
  Nanoseconds t_imac;
  Picojoules e_imac;

  [[nodiscard]] double energy_ratio() const { return e_vn / e_imac; }
  [[nodiscard]] double delay_ratio() const { return t_vn / t_imac; }
  [[nodiscard]] double edp_ratio() const { return (e_vn * t_vn) / (e_imac * t_imac); }
};

[[nodiscard]] LayerReport evaluate_layer(const LayerSpec& layer, const PerfParams& p);

struct NetworkReport {
  std::vector<LayerReport> layers;
  LayerReport total;  // sums over layers, name "total"
};

[[nodiscard]] NetworkReport compare_network(const std::vector<LayerSpec>& net,
                                            const PerfParams& p);

struct SweepPoint {
  double b_io = 0;
  double energy_ratio = 0;
  double delay_ratio = 0;
  double edp_ratio = 0;
};

// Network EDP ratio for each B_IO value. Throws ConfigError when empty.
[[nodiscard]] std::vector<SweepPoint> sweep_bio(const std::vector<LayerSpec>& net,
                                                const PerfParams& p,
                                                const std::vector<double>& bio_values);

// Total in-memory energy of one forward pass.
[[nodiscard]] Nanojoules per_inference_energy(const std::vector<LayerSpec>& net,
                                              const PerfParams& p);

struct AreaComponent {
  std::string name;
  double um2 = 0.0;  // per array
  // Part of the compute periphery (ADC, accumulator, DAC, MUX) rather than
  // the standard SRAM macro (cells, decoder, column circuit).
  bool compute_periphery = false;
};

struct AreaTable {
  std::vector<AreaComponent> components;

  [[nodiscard]] static AreaTable defaults();
  [[nodiscard]] double total() const;
  // Share of the array taken by the compute periphery (about 0.36 by default).
  [[nodiscard]] double compute_periphery_fraction() const;
  // Share of the array taken by everything except the SRAM cells.
  [[nodiscard]] double non_cell_fraction() const;
};

}  // namespace imac::perf
