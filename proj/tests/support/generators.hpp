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
#include <random>
#include <string>
#include <vector>

#include "imac/device.hpp"

// Seeded value generators for property tests. They use std::mt19937_64 so
// that test inputs never share a code path with the simulator's Philox
// streams.
namespace imac::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  bool coin() { return integer(0, 1) == 1; }

  SignedWord word() { return SignedWord(integer(-kMaxMagnitude, kMaxMagnitude)); }

  std::vector<SignedWord> words(std::size_t n) {
    std::vector<SignedWord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(word());
    return out;
  }

  std::vector<float> floats(std::size_t n, double lo, double hi) {
    std::vector<float> out(n);
    for (auto& v : out) v = static_cast<float>(real(lo, hi));
    return out;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// Runs `prop(gen, case_index)` for `cases` generated cases.
template <class Prop>
void for_all(std::uint64_t seed, int cases, Prop&& prop) {
  Gen g(seed);
  for (int i = 0; i < cases; ++i) prop(g, i);
}

}  // namespace imac::testing
