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

#include "imac/device.hpp"
#include "imac/engine.hpp"
#include "imac/peripherals.hpp"
#include "imac/perf.hpp"
#include "imac/variation.hpp"

namespace imac {

// Every tunable of a run. The ADC range and the array's R follow the device
// section unless the "adc" / "array" sections set them.
struct SimConfig {
  DeviceParams device;
  AdcConfig adc;
  ArrayConfig array;
  perf::PerfParams perf;
  NoiseSpec noise;

  [[nodiscard]] ImacEngine engine() const { return ImacEngine(device, adc, array); }
  void validate() const;
};

// JSON with optional top-level sections "device", "adc", "array", "perf"
// and "noise". Unknown sections or keys and wrongly typed values throw
// ConfigError; so does a configuration failing validation.
[[nodiscard]] SimConfig parse_config(const std::string& json_text);
[[nodiscard]] SimConfig load_config(const std::string& path);

// Complete configuration as pretty-printed JSON; parse_config reads it back
// to an identical configuration.
[[nodiscard]] std::string dump_config(const SimConfig& cfg);

}  // namespace imac
