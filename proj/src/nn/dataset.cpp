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

#include "imac/nn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "imac/errors.hpp"

namespace imac::nn {

namespace {

constexpr std::uint32_t kIdxImages = 0x00000803;
constexpr std::uint32_t kIdxLabels = 0x00000801;
constexpr std::size_t kCifarSide = 32;
constexpr std::size_t kCifarRecord = 1 + 3 * kCifarSide * kCifarSide;

std::vector<unsigned char> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t be32(const std::vector<unsigned char>& b, std::size_t at, const std::string& path) {
  if (b.size() < at + 4) throw FormatError(path, b.size(), "truncated header");
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) |
         (std::uint32_t{b[at + 2]} << 8) | std::uint32_t{b[at + 3]};
}

void put_be32(std::string& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<char>((v >> s) & 0xffu));
}

unsigned char to_byte(float x) {
  const long v = std::lround(static_cast<double>(x) * 255.0);
  return static_cast<unsigned char>(v < 0 ? 0 : (v > 255 ? 255 : v));
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write failed for " + path);
}

}  // namespace

DatasetKind parse_dataset_kind(const std::string& s) {
  if (s == "mnist-idx") return DatasetKind::MnistIdx;
  if (s == "cifar10-binary") return DatasetKind::Cifar10Binary;
  throw ConfigError("unknown dataset kind '" + s + "' (mnist-idx, cifar10-binary)");
}

long Dataset::image_size() const {
  return images.shape.size() == 4 ? images.shape[1] * images.shape[2] * images.shape[3] : 0;
}

Dataset Dataset::head(long n) const {
  const long k = std::min(n, count());
  Dataset d;
  std::vector<long> shape = images.shape;
  shape[0] = k;
  const auto per = static_cast<std::size_t>(image_size());
  d.images = FloatTensor(shape, std::vector<float>(images.data.begin(),
                                                   images.data.begin() + static_cast<long>(per) * k));
  d.labels.assign(labels.begin(), labels.begin() + k);
  return d;
}

Dataset load_mnist_idx(const std::string& images_path, const std::string& labels_path) {
  const auto img = slurp(images_path);
  if (be32(img, 0, images_path) != kIdxImages) {
    throw FormatError(images_path, 0, "bad IDX image magic");
  }
  const std::uint32_t n = be32(img, 4, images_path);
  const std::uint32_t rows = be32(img, 8, images_path);
  const std::uint32_t cols = be32(img, 12, images_path);
  const std::size_t pixels = std::size_t{rows} * cols;
  const std::size_t expect = 16 + std::size_t{n} * pixels;
  if (img.size() < expect) throw FormatError(images_path, img.size(), "truncated image data");
  if (img.size() > expect) throw FormatError(images_path, expect, "trailing bytes");

  const auto lab = slurp(labels_path);
  if (be32(lab, 0, labels_path) != kIdxLabels) {
    throw FormatError(labels_path, 0, "bad IDX label magic");
  }
  if (be32(lab, 4, labels_path) != n) {
    throw FormatError(labels_path, 4, "label count does not match image count");
  }
  if (lab.size() < 8 + std::size_t{n}) throw FormatError(labels_path, lab.size(), "truncated labels");
  if (lab.size() > 8 + std::size_t{n}) throw FormatError(labels_path, 8 + std::size_t{n}, "trailing bytes");

  Dataset d;
  d.images = FloatTensor({static_cast<long>(n), 1, static_cast<long>(rows), static_cast<long>(cols)});
  for (std::size_t i = 0; i < d.images.size(); ++i) d.images[i] = img[16 + i] / 255.0f;
  d.labels.assign(lab.begin() + 8, lab.end());
  for (std::size_t i = 0; i < d.labels.size(); ++i) {
    if (d.labels[i] > 9) throw FormatError(labels_path, 8 + i, "label out of range");
  }
  return d;
}

Dataset load_cifar10_binary(const std::vector<std::string>& paths) {
  std::vector<float> pixels;
  std::vector<std::uint8_t> labels;
  for (const auto& path : paths) {
    const auto b = slurp(path);
    if (b.empty()) throw FormatError(path, 0, "empty CIFAR-10 batch");
    if (b.size() % kCifarRecord != 0) {
      throw FormatError(path, b.size() - b.size() % kCifarRecord, "truncated record");
    }
    for (std::size_t at = 0; at < b.size(); at += kCifarRecord) {
      if (b[at] > 9) throw FormatError(path, at, "label out of range");
      labels.push_back(b[at]);
      for (std::size_t i = 1; i < kCifarRecord; ++i) pixels.push_back(b[at + i] / 255.0f);
    }
  }
  Dataset d;
  const long side = static_cast<long>(kCifarSide);
  d.images = FloatTensor({static_cast<long>(labels.size()), 3, side, side}, std::move(pixels));
  d.labels = std::move(labels);
  return d;
}

Dataset load_dataset(const std::string& dir, DatasetKind kind) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw IoError("dataset directory not found: " + dir);
  const fs::path root(dir);
  if (kind == DatasetKind::MnistIdx) {
    return load_mnist_idx((root / "t10k-images-idx3-ubyte").string(),
                          (root / "t10k-labels-idx1-ubyte").string());
  }
  return load_cifar10_binary({(root / "test_batch.bin").string()});
}

void write_mnist_idx(const Dataset& d, const std::string& images_path,
                     const std::string& labels_path) {
  if (d.images.shape.size() != 4 || d.images.shape[1] != 1) {
    throw ShapeError("MNIST writer expects [n, 1, h, w] images");
  }
  std::string img;
  put_be32(img, kIdxImages);
  put_be32(img, static_cast<std::uint32_t>(d.count()));
  put_be32(img, static_cast<std::uint32_t>(d.images.shape[2]));
  put_be32(img, static_cast<std::uint32_t>(d.images.shape[3]));
  for (float x : d.images.data) img.push_back(static_cast<char>(to_byte(x)));
  std::string lab;
  put_be32(lab, kIdxLabels);
  put_be32(lab, static_cast<std::uint32_t>(d.labels.size()));
  for (auto l : d.labels) lab.push_back(static_cast<char>(l));
  write_file(images_path, img);
  write_file(labels_path, lab);
}

void write_cifar10_binary(const Dataset& d, const std::string& path) {
  const long side = static_cast<long>(kCifarSide);
  if (d.images.shape != std::vector<long>{d.count(), 3, side, side}) {
    throw ShapeError("CIFAR-10 writer expects [n, 3, 32, 32] images");
  }
  std::string out;
  out.reserve(static_cast<std::size_t>(d.count()) * kCifarRecord);
  const auto per = static_cast<std::size_t>(d.image_size());
  for (std::size_t i = 0; i < d.labels.size(); ++i) {
    out.push_back(static_cast<char>(d.labels[i]));
    for (std::size_t j = 0; j < per; ++j) out.push_back(static_cast<char>(to_byte(d.images[i * per + j])));
  }
  write_file(path, out);
}

}  // namespace imac::nn
