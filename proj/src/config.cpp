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

#include "imac/config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "imac/errors.hpp"

namespace imac {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// One configurable field: how to read it from JSON and how to write it.
struct Field {
  std::function<void(const json&)> read;
  std::function<ordered_json()> write;
};
using FieldTable = std::vector<std::pair<std::string, Field>>;

Field number(double& ref) {
  return {[&ref](const json& v) {
            if (!v.is_number()) throw ConfigError("expected a number");
            ref = v.get<double>();
          },
          [&ref] { return ordered_json(ref); }};
}

template <class Tag>
Field quantity(units::Quantity<Tag>& ref) {
  return {[&ref](const json& v) {
            if (!v.is_number()) throw ConfigError("expected a number");
            ref = units::Quantity<Tag>(v.get<double>());
          },
          [&ref] { return ordered_json(ref.value()); }};
}

Field integer(int& ref) {
  return {[&ref](const json& v) {
            if (!v.is_number_integer()) throw ConfigError("expected an integer");
            ref = v.get<int>();
          },
          [&ref] { return ordered_json(ref); }};
}

Field flag(bool& ref) {
  return {[&ref](const json& v) {
            if (!v.is_boolean()) throw ConfigError("expected a boolean");
            ref = v.get<bool>();
          },
          [&ref] { return ordered_json(ref); }};
}

FieldTable device_fields(DeviceParams& d) {
  return {{"v_dd_mv", number(d.v_dd)},
          {"v_wl_min_mv", number(d.v_wl_min)},
          {"v_wl_max_mv", number(d.v_wl_max)},
          {"v_blb_floor_mv", number(d.v_blb_floor)},
          {"blb_targets_mv",
           {[&d](const json& v) {
              if (!v.is_array() || v.size() != 4) throw ConfigError("expected 4 numbers");
              for (std::size_t i = 0; i < 4; ++i) {
                if (!v[i].is_number()) throw ConfigError("expected 4 numbers");
                d.blb_targets[i] = v[i].get<double>();
              }
            },
            [&d] { return ordered_json(d.blb_targets); }}},
          {"v_product_floor_mv", number(d.v_product_floor)},
          {"c_bitline_ff", number(d.c_bitline)},
          {"c_sample_ff", number(d.c_sample)},
          {"c_acc_ff", number(d.c_acc)},
          {"v_th_m9_mv", number(d.v_th_m9)},
          {"n_acc", integer(d.n_acc)},
          {"sigma_analog_mv", number(d.sigma_analog_mv)},
          {"sigma_digital_code", number(d.sigma_digital_code)}};
}

FieldTable adc_fields(AdcConfig& a) {
  return {{"bits", integer(a.bits)}, {"v_lo_mv", number(a.v_lo)}, {"v_hi_mv", number(a.v_hi)}};
}

FieldTable array_fields(ArrayConfig& a) {
  return {{"rows", integer(a.n_rows)},
          {"cols", integer(a.n_cols)},
          {"bits_per_weight", integer(a.bits_per_weight)},
          {"r_amortization", integer(a.r_amortization)}};
}

FieldTable perf_fields(perf::PerfParams& p) {
  return {{"b_io", number(p.b_io)},           {"b_w", number(p.b_w)},
          {"n_bank", number(p.n_bank)},       {"n_col", number(p.n_col)},
          {"n_mult", number(p.n_mult)},       {"t_read_ns", quantity(p.t_read)},
          {"t_mult_ns", quantity(p.t_mult)},  {"t_amac_ns", quantity(p.t_amac)},
          {"t_adc_ns", quantity(p.t_adc)},    {"e_read_pj", quantity(p.e_read)},
          {"e_mult_pj", quantity(p.e_mult)},  {"e_amac_pj", quantity(p.e_amac)},
          {"e_adc_pj", quantity(p.e_adc)},    {"p_leak_nw", quantity(p.p_leak)},
          {"r", number(p.r)},                 {"ceil_occupancy", flag(p.ceil_occupancy)}};
}

FieldTable noise_fields(NoiseSpec& n) {
  return {{"level",
           {[&n](const json& v) {
              if (!v.is_string()) throw ConfigError("expected a string");
              n.level = parse_noise_level(v.get<std::string>());
            },
            [&n] { return ordered_json(to_string(n.level)); }}},
          {"sigma_analog_mv", number(n.sigma_analog_mv)},
          {"sigma_digital_code", number(n.sigma_digital_code)},
          {"seed",
           {[&n](const json& v) {
              if (!v.is_number_unsigned()) throw ConfigError("expected a non-negative integer");
              n.seed = v.get<std::uint64_t>();
            },
            [&n] { return ordered_json(n.seed); }}}};
}

void apply(const json& section, const FieldTable& fields, const std::string& name) {
  if (!section.is_object()) throw ConfigError("config section '" + name + "' must be an object");
  for (const auto& [key, value] : section.items()) {
    auto it = std::find_if(fields.begin(), fields.end(),
                           [&key](const auto& f) { return f.first == key; });
    if (it == fields.end()) throw ConfigError("config: unknown key '" + name + "." + key + "'");
    try {
      it->second.read(value);
    } catch (const ConfigError& e) {
      throw ConfigError("config: " + name + "." + key + ": " + e.what());
    }
  }
}

ordered_json emit(const FieldTable& fields) {
  ordered_json out = ordered_json::object();
  for (const auto& [key, f] : fields) out[key] = f.write();
  return out;
}

}  // namespace

void SimConfig::validate() const {
  device.validate();
  adc.validate();
  array.validate(device);
  perf.validate();
  noise.validate();
}

SimConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "device" && key != "adc" && key != "array" && key != "perf" && key != "noise") {
      throw ConfigError("config: unknown section '" + key + "'");
    }
  }

  SimConfig cfg;
  if (doc.contains("device")) apply(doc["device"], device_fields(cfg.device), "device");
  cfg.adc = AdcConfig::matched_to(cfg.device);
  cfg.array.r_amortization = cfg.device.n_acc;
  cfg.perf.r = cfg.device.n_acc;
  cfg.noise = NoiseSpec::from_device(cfg.device, NoiseLevel::None, 0);
  if (doc.contains("adc")) apply(doc["adc"], adc_fields(cfg.adc), "adc");
  if (doc.contains("array")) apply(doc["array"], array_fields(cfg.array), "array");
  if (doc.contains("perf")) apply(doc["perf"], perf_fields(cfg.perf), "perf");
  if (doc.contains("noise")) apply(doc["noise"], noise_fields(cfg.noise), "noise");
  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const SimConfig& cfg) {
  SimConfig c = cfg;
  ordered_json out;
  out["device"] = emit(device_fields(c.device));
  out["adc"] = emit(adc_fields(c.adc));
  out["array"] = emit(array_fields(c.array));
  out["perf"] = emit(perf_fields(c.perf));
  out["noise"] = emit(noise_fields(c.noise));
  return out.dump(2) + "\n";
}

}  // namespace imac
