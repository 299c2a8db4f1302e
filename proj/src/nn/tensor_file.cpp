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

#include "imac/nn/tensor_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "imac/errors.hpp"

namespace imac::nn {

std::string shape_string(const std::vector<long>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

namespace {

constexpr char kMagic[4] = {'I', 'M', 'T', 'F'};
constexpr std::uint8_t kDtypeF32 = 0;

class Reader {
 public:
  Reader(std::string path, std::vector<unsigned char> bytes)
      : path_(std::move(path)), bytes_(std::move(bytes)) {}

  std::uint64_t le(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
    pos_ += static_cast<std::size_t>(width);
    return v;
  }
  std::string text(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  [[noreturn]] void fail(const std::string& what) const { throw FormatError(path_, pos_, what); }
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) fail("truncated file");
  }
  [[nodiscard]] std::size_t pos() const { return pos_; }
  [[nodiscard]] bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string path_;
  std::vector<unsigned char> bytes_;
  std::size_t pos_ = 0;
};

void put_le(std::string& out, std::uint64_t v, int width) {
  for (int i = 0; i < width; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

}  // namespace

TensorMap read_tensor_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open tensor file " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  Reader r(path, std::move(bytes));

  if (r.text(4) != std::string(kMagic, 4)) throw FormatError(path, 0, "bad magic");
  const auto version = r.le(4);
  if (version != kTensorFileVersion) throw FormatError(path, 4, "unsupported version");
  const auto count = r.le(4);

  TensorMap out;
  for (std::uint64_t t = 0; t < count; ++t) {
    const auto name_len = r.le(2);
    std::string name = r.text(name_len);
    const std::size_t dtype_at = r.pos();
    if (r.le(1) != kDtypeF32) throw FormatError(path, dtype_at, "unsupported dtype");
    const auto rank = r.le(1);
    std::vector<long> shape;
    for (std::uint64_t d = 0; d < rank; ++d) shape.push_back(static_cast<long>(r.le(4)));
    const std::size_t n = FloatTensor::element_count(shape);
    r.need(n * 4);
    std::vector<float> data(n);
    for (auto& f : data) f = std::bit_cast<float>(static_cast<std::uint32_t>(r.le(4)));
    if (!out.emplace(name, FloatTensor(std::move(shape), std::move(data))).second) {
      r.fail("duplicate tensor " + name);
    }
  }
  if (!r.done()) r.fail("trailing bytes");
  return out;
}

void write_tensor_file(const std::string& path, const TensorMap& tensors) {
  std::string out(kMagic, 4);
  put_le(out, kTensorFileVersion, 4);
  put_le(out, tensors.size(), 4);
  for (const auto& [name, t] : tensors) {
    if (name.size() > 0xffff) throw ConfigError("tensor name too long: " + name);
    if (t.shape.size() > 0xff) throw ShapeError("tensor rank too large: " + name);
    if (t.size() != FloatTensor::element_count(t.shape)) {
      throw ShapeError("tensor " + name + " payload does not match " + shape_string(t.shape));
    }
    put_le(out, name.size(), 2);
    out += name;
    put_le(out, kDtypeF32, 1);
    put_le(out, t.shape.size(), 1);
    for (long d : t.shape) put_le(out, static_cast<std::uint64_t>(d), 4);
    for (float f : t.data) put_le(out, std::bit_cast<std::uint32_t>(f), 4);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write tensor file " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("write failed for " + path);
}

}  // namespace imac::nn
