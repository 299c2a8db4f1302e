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

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

namespace imac::nn {

// Dense row-major tensor.
template <class T>
struct Tensor {
  std::vector<long> shape;
  std::vector<T> data;

  Tensor() = default;
  explicit Tensor(std::vector<long> s, T fill = T{}) : shape(std::move(s)) {
    data.assign(element_count(shape), fill);
  }
  Tensor(std::vector<long> s, std::vector<T> d) : shape(std::move(s)), data(std::move(d)) {}

  [[nodiscard]] static std::size_t element_count(const std::vector<long>& s) {
    return std::accumulate(s.begin(), s.end(), std::size_t{1},
                           [](std::size_t a, long b) { return a * static_cast<std::size_t>(b); });
  }
  [[nodiscard]] std::size_t size() const { return data.size(); }
  [[nodiscard]] long dim(std::size_t i) const { return shape.at(i); }
  T& operator[](std::size_t i) { return data[i]; }
  const T& operator[](std::size_t i) const { return data[i]; }
};

using FloatTensor = Tensor<float>;
using IntTensor = Tensor<int>;

[[nodiscard]] std::string shape_string(const std::vector<long>& shape);

}  // namespace imac::nn
