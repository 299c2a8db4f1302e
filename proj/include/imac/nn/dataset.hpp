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
#include <string>
#include <vector>

#include "imac/nn/tensor.hpp"

namespace imac::nn {

enum class DatasetKind : std::uint8_t { MnistIdx, Cifar10Binary };

// Throws ConfigError for anything but "mnist-idx" / "cifar10-binary".
[[nodiscard]] DatasetKind parse_dataset_kind(const std::string& s);

// Images as [count, channels, height, width] with pixels scaled to [0, 1].
struct Dataset {
  FloatTensor images;
  std::vector<std::uint8_t> labels;

  [[nodiscard]] long count() const { return images.shape.empty() ? 0 : images.shape[0]; }
  [[nodiscard]] long image_size() const;
  // First n samples (or all when n exceeds the count).
  [[nodiscard]] Dataset head(long n) const;
};

// IDX pair (images magic 0x00000803, labels magic 0x00000801).
[[nodiscard]] Dataset load_mnist_idx(const std::string& images_path,
                                     const std::string& labels_path);

// Concatenation of CIFAR-10 binary batch files (3073-byte records).
[[nodiscard]] Dataset load_cifar10_binary(const std::vector<std::string>& paths);

// Directory loaders: MNIST expects t10k-images-idx3-ubyte and
// t10k-labels-idx1-ubyte, CIFAR-10 expects test_batch.bin. A missing
// directory or file is an IoError.
[[nodiscard]] Dataset load_dataset(const std::string& dir, DatasetKind kind);

// Writers used by fixture generation. Pixels are stored as round(255 x).
void write_mnist_idx(const Dataset& d, const std::string& images_path,
                     const std::string& labels_path);
void write_cifar10_binary(const Dataset& d, const std::string& path);

}  // namespace imac::nn
