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

#include "imac/engine.hpp"

namespace imac {

struct MonteCarloResult {
  std::vector<std::uint64_t> counts;  // one slot per ADC code
  Sign capacitor = Sign::Positive;    // side whose code is histogrammed
  int nominal_code = 0;               // noise-free code of that side
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation of the code
};

// Repeats one <= R element MAC window `trials` times with independent
// analog noise draws (trial t uses stream (seed, t)) and histograms the ADC
// code of the capacitor selected by the sign of the exact result. Trials may
// run in parallel; the histogram is identical for any thread count.
[[nodiscard]] MonteCarloResult monte_carlo_mac(const ImacEngine& engine,
                                               std::span<const SignedWord> vin,
                                               std::span<const SignedWord> w,
                                               std::uint64_t trials, const NoiseSpec& noise,
                                               unsigned threads = 0);

}  // namespace imac
