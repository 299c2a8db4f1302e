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
#include <cstdint>

namespace imac {

// Philox4x32-10 counter-based generator (Salmon et al., Random123). The
// output block is a pure function of (counter, key), so any draw of any
// stream can be produced independently of scheduling.
namespace philox {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

[[nodiscard]] Counter block(Counter ctr, Key key);

}  // namespace philox

// Mixes two 64-bit values into a stream identifier (splitmix64 finalizer).
[[nodiscard]] std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b);

// Sequential view of one Philox stream: key = seed, counter = (draw index,
// stream id). Version 1 of the stream layout; changing it changes every
// seeded result.
class RandomStream {
 public:
  static constexpr int kLayoutVersion = 1;

  RandomStream(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  // Uniform on the open interval (0, 1).
  double uniform();
  // Standard normal via Box-Muller; the second variate is cached.
  double normal();
  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  philox::Counter buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace imac
