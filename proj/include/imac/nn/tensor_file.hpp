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

#include <map>
#include <string>

#include "imac/nn/tensor.hpp"

namespace imac::nn {

// Portable named-tensor container.
//
//   magic    "IMTF"
//   u32      version (1)
//   u32      tensor count
//   per tensor:
//     u16    name length, then the UTF-8 name
//     u8     dtype (0 = float32)
//     u8     rank
//     u32    dims[rank]
//     f32    payload, row-major
//
// All integers and floats are little-endian.
using TensorMap = std::map<std::string, FloatTensor>;

inline constexpr std::uint32_t kTensorFileVersion = 1;

// Throws IoError when the file cannot be opened, FormatError on bad content.
[[nodiscard]] TensorMap read_tensor_file(const std::string& path);
void write_tensor_file(const std::string& path, const TensorMap& tensors);

}  // namespace imac::nn
