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

#include "imac/montecarlo.hpp"

#include <cmath>

#include "imac/errors.hpp"
#include "imac/parallel.hpp"

namespace imac {

MonteCarloResult monte_carlo_mac(const ImacEngine& engine, std::span<const SignedWord> vin,
                                 std::span<const SignedWord> w, std::uint64_t trials,
                                 const NoiseSpec& noise, unsigned threads) {
  if (vin.size() != w.size()) throw InputDomainError("monte_carlo_mac: operand lengths differ");
  if (vin.size() > static_cast<std::size_t>(engine.array().r_amortization)) {
    throw InputDomainError("monte_carlo_mac: more than R elements");
  }
  if (trials == 0) throw InputDomainError("monte_carlo_mac: trials must be >= 1");

  MonteCarloResult result;
  result.trials = trials;
  result.seed = noise.seed;
  const WindowResult nominal = engine.run_window(vin, w, NoiseSpec::none(), nullptr);
  result.capacitor = nominal.exact >= 0 ? Sign::Positive : Sign::Negative;
  result.nominal_code =
      result.capacitor == Sign::Positive ? nominal.code_pos : nominal.code_neg;

  std::vector<int> codes(trials);
  parallel_for(
      trials,
      [&](std::size_t t) {
        RandomStream rng(noise.seed, derive_stream(0x4d43ull, t));
        const WindowResult win = engine.run_window(vin, w, noise, &rng);
        codes[t] = result.capacitor == Sign::Positive ? win.code_pos : win.code_neg;
      },
      threads);

  result.counts.assign(static_cast<std::size_t>(engine.adc().levels()), 0);
  double sum = 0.0;
  for (int c : codes) {
    ++result.counts[static_cast<std::size_t>(c)];
    sum += c;
  }
  result.mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (std::size_t c = 0; c < result.counts.size(); ++c) {
    const double d = static_cast<double>(c) - result.mean;
    ss += static_cast<double>(result.counts[c]) * d * d;
  }
  result.stddev = std::sqrt(ss / static_cast<double>(trials));
  return result;
}

}  // namespace imac
