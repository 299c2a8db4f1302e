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

#include "imac/perf.hpp"

#include <cmath>

#include "imac/errors.hpp"

namespace imac::perf {

namespace {

double occupancy(double numerator, double denominator, const PerfParams& p) {
  if (denominator <= 0.0) throw ConfigError("perf: zero divisor in occupancy term");
  const double x = numerator / denominator;
  return p.ceil_occupancy ? std::ceil(x) : x;
}

}  // namespace

void PerfParams::validate() const {
  const bool ok = b_io > 0 && b_w > 0 && n_bank > 0 && n_col > 0 && n_mult > 0 &&
                  t_read.value() > 0 && t_mult.value() > 0 && t_amac.value() > 0 &&
                  t_adc.value() > 0 && e_read.value() > 0 && e_mult.value() > 0 &&
                  e_amac.value() > 0 && e_adc.value() > 0 && p_leak.value() > 0 && r > 0;
  if (!ok) throw ConfigError("perf params must all be strictly positive");
}

Nanoseconds vn_delay(const LayerSpec& layer, const PerfParams& p) {
  const double w = layer.weight_count();
  const double n_mov2 = static_cast<double>(layer.n_mov * layer.n_mov);
  const double fetches = occupancy(w, (p.b_io / p.b_w) * p.n_bank, p);
  const double mult_rounds = occupancy(w, p.n_mult, p);
  return p.t_read * fetches + p.t_mult * (mult_rounds * n_mov2);
}

Picojoules vn_energy(const LayerSpec& layer, const PerfParams& p, Nanoseconds t_vn) {
  const double w = layer.weight_count();
  return p.e_read * w + p.e_mult * layer.mac_count() + units::energy(p.p_leak, t_vn);
}

Nanoseconds imac_delay(const LayerSpec& layer, const PerfParams& p) {
  const double n_mov2 = static_cast<double>(layer.n_mov * layer.n_mov);
  const double passes = occupancy(layer.weight_count(), (p.n_col / p.b_w) * p.n_bank, p);
  return (p.t_amac + p.t_adc / p.r) * (passes * n_mov2);
}

Picojoules imac_energy(const LayerSpec& layer, const PerfParams& p, Nanoseconds t) {
  return (p.e_amac + p.e_adc / p.r) * layer.mac_count() + units::energy(p.p_leak, t);
}

LayerReport evaluate_layer(const LayerSpec& layer, const PerfParams& p) {
  layer.validate();
  LayerReport r;
  r.name = layer.name;
  r.t_vn = vn_delay(layer, p);
  r.e_vn = vn_energy(layer, p, r.t_vn);
  r.t_imac = imac_delay(layer, p);
  r.e_imac = imac_energy(layer, p, r.t_imac);
  return r;
}

NetworkReport compare_network(const std::vector<LayerSpec>& net, const PerfParams& p) {
  p.validate();
  NetworkReport report;
  report.total.name = "total";
  for (const auto& layer : net) {
    LayerReport r = evaluate_layer(layer, p);
    report.total.t_vn += r.t_vn;
    report.total.e_vn += r.e_vn;
    report.total.t_imac += r.t_imac;
    report.total.e_imac += r.e_imac;
    report.layers.push_back(std::move(r));
  }
  return report;
}

std::vector<SweepPoint> sweep_bio(const std::vector<LayerSpec>& net, const PerfParams& p,
                                  const std::vector<double>& bio_values) {
  if (bio_values.empty()) throw ConfigError("sweep_bio: no B_IO values");
  std::vector<SweepPoint> out;
  out.reserve(bio_values.size());
  for (double b : bio_values) {
    PerfParams q = p;
    q.b_io = b;
    const NetworkReport rep = compare_network(net, q);
    out.push_back({b, rep.total.energy_ratio(), rep.total.delay_ratio(), rep.total.edp_ratio()});
  }
  return out;
}

Nanojoules per_inference_energy(const std::vector<LayerSpec>& net, const PerfParams& p) {
  Picojoules total{0.0};
  for (const auto& layer : net) total += imac_energy(layer, p, imac_delay(layer, p));
  return units::to_nanojoules(total);
}

AreaTable AreaTable::defaults() {
  return {{{"SRAM cell", 83100.0, false},
           {"ADC", 40800.0, true},
           {"Accumulator", 30600.0, true},
           {"DAC", 400.0, true},
           {"MUX", 2100.0, true},
           {"Decoder", 4800.0, false},
           {"Column circuit", 44000.0, false}}};
}

double AreaTable::total() const {
  double sum = 0.0;
  for (const auto& c : components) sum += c.um2;
  return sum;
}

double AreaTable::compute_periphery_fraction() const {
  double added = 0.0;
  for (const auto& c : components) {
    if (c.compute_periphery) added += c.um2;
  }
  const double t = total();
  return t > 0.0 ? added / t : 0.0;
}

double AreaTable::non_cell_fraction() const {
  double cells = 0.0;
  for (const auto& c : components) {
    if (c.name == "SRAM cell") cells += c.um2;
  }
  const double t = total();
  return t > 0.0 ? (t - cells) / t : 0.0;
}

}  // namespace imac::perf
