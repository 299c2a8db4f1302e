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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "../support/generators.hpp"
#include "imac/errors.hpp"
#include "imac/nn/dataset.hpp"
#include "imac/nn/infer.hpp"
#include "imac/nn/network.hpp"
#include "imac/nn/quantize.hpp"
#include "imac/nn/tensor_file.hpp"

namespace fs = std::filesystem;
using namespace imac;
using namespace imac::nn;
using imac::testing::for_all;
using imac::testing::Gen;

namespace {

fs::path scratch_dir(const std::string& tag) {
  const auto d = fs::temp_directory_path() / ("imac_nn_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

const char* kTinyNet = R"({
  "name": "tiny", "input": [2, 8, 8],
  "layers": [
    {"kind": "conv", "name": "c1", "out": 3, "kernel": 3, "pad": 1},
    {"kind": "relu"},
    {"kind": "maxpool", "kernel": 2},
    {"kind": "dropout", "rate": 0.5},
    {"kind": "fc", "name": "f1", "out": 5}
  ]})";

NetworkSpec tiny_net(std::uint64_t seed) {
  NetworkSpec net = parse_network_spec(kTinyNet);
  bind_weights(net, random_weights(net, seed));
  return net;
}

// Direct-loop convolution over quantized integers with zero padding.
std::vector<long> conv_oracle(const QuantizedTensor& x, const QuantizedTensor& w, long pad) {
  const long c = x.shape[0], h = x.shape[1], n = w.shape[0], k = w.shape[2];
  const long out = h + 2 * pad - k + 1;
  std::vector<long> y(static_cast<std::size_t>(n * out * out), 0);
  for (long o = 0; o < n; ++o)
    for (long r = 0; r < out; ++r)
      for (long s = 0; s < out; ++s) {
        long acc = 0;
        for (long m = 0; m < c; ++m)
          for (long i = 0; i < k; ++i)
            for (long j = 0; j < k; ++j) {
              const long rr = r + i - pad, ss = s + j - pad;
              if (rr < 0 || ss < 0 || rr >= h || ss >= h) continue;
              acc += long{x.q[static_cast<std::size_t>((m * h + rr) * h + ss)]} *
                     w.q[static_cast<std::size_t>(((o * c + m) * k + i) * k + j)];
            }
        y[static_cast<std::size_t>((o * out + r) * out + s)] = acc;
      }
  return y;
}

std::vector<float> random_image(Gen& g, std::size_t n) { return g.floats(n, 0.0, 1.0); }

}  // namespace

TEST_CASE("quantization examples") {
  const std::vector<float> x{-1.0F, -0.5F, 0.0F, 0.5F, 1.0F};
  const auto q = quantize_linear(x, 5);
  CHECK(q.scale == doctest::Approx(1.0 / 15.0));
  CHECK(q.q == std::vector<int>{-15, -8, 0, 8, 15});
  const std::vector<float> zeros(4, 0.0F);
  CHECK(quantize_linear(zeros, 5).scale == 1.0);
  CHECK(round_half_away(2.5) == 3);
  CHECK(round_half_away(-2.5) == -3);
  CHECK(round_half_away(0.49) == 0);
  CHECK(QuantScheme::max_magnitude(5) == 15);
  CHECK(QuantScheme::max_magnitude(8) == 127);
  CHECK_THROWS_AS((void)symmetric_scale(x, 1), ConfigError);
  QuantScheme s;
  s.symmetric = false;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("quantization round trip stays within half a step") {
  for_all(401, 300, [](Gen& g, int) {
    const int bits = g.integer(2, 12);
    const auto x = g.floats(static_cast<std::size_t>(g.integer(1, 200)), -g.real(0.01, 50), g.real(0.01, 50));
    const auto q = quantize_linear(x, bits);
    const int lim = QuantScheme::max_magnitude(bits);
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(std::abs(q.q[i]) <= lim);
      CHECK(std::fabs(q.dequantize(i) - x[i]) <= q.scale / 2.0 * (1.0 + 1e-6));
    }
  });
}

TEST_CASE("tensor file round trip and corruption") {
  const auto dir = scratch_dir("imtf");
  TensorMap m;
  m["a.weight"] = FloatTensor({2, 3}, std::vector<float>{1, 2, 3, 4, 5, -6.5F});
  m["b"] = FloatTensor({1}, std::vector<float>{0.25F});
  const auto path = (dir / "t.imtf").string();
  write_tensor_file(path, m);
  const auto back = read_tensor_file(path);
  REQUIRE(back.size() == 2);
  CHECK(back.at("a.weight").shape == std::vector<long>{2, 3});
  CHECK(back.at("a.weight").data == m["a.weight"].data);
  CHECK(back.at("b").data == m["b"].data);

  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  auto write_raw = [&](const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
  };
  write_raw(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS((void)read_tensor_file(path), FormatError);
  write_raw("XXXX" + bytes.substr(4));
  CHECK_THROWS_AS((void)read_tensor_file(path), FormatError);
  write_raw(bytes + "z");
  CHECK_THROWS_AS((void)read_tensor_file(path), FormatError);
  CHECK_THROWS_AS((void)read_tensor_file((dir / "missing").string()), IoError);
  fs::remove_all(dir);
}

TEST_CASE("MNIST IDX round trip and truncation") {
  const auto dir = scratch_dir("mnist");
  Gen g(402);
  Dataset d;
  d.images = FloatTensor({3, 1, 28, 28});
  for (auto& v : d.images.data) v = static_cast<float>(g.integer(0, 255)) / 255.0F;
  d.labels = {7, 0, 9};
  const auto img = (dir / "t10k-images-idx3-ubyte").string();
  const auto lab = (dir / "t10k-labels-idx1-ubyte").string();
  write_mnist_idx(d, img, lab);
  const auto back = load_dataset(dir.string(), DatasetKind::MnistIdx);
  CHECK(back.count() == 3);
  CHECK(back.image_size() == 784);
  CHECK(back.labels == d.labels);
  for (std::size_t i = 0; i < d.images.data.size(); ++i) {
    CHECK(back.images.data[i] == doctest::Approx(d.images.data[i]));
  }
  CHECK(back.head(2).count() == 2);
  CHECK(back.head(10).count() == 3);

  fs::resize_file(img, fs::file_size(img) - 1);
  CHECK_THROWS_AS((void)load_dataset(dir.string(), DatasetKind::MnistIdx), FormatError);
  CHECK_THROWS_AS((void)load_dataset((dir / "nope").string(), DatasetKind::MnistIdx), IoError);
  CHECK_THROWS_AS((void)parse_dataset_kind("imagenet"), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("CIFAR-10 binary records") {
  const auto dir = scratch_dir("cifar");
  Dataset d;
  d.images = FloatTensor({2, 3, 32, 32});
  for (std::size_t i = 0; i < d.images.data.size(); ++i) {
    d.images.data[i] = static_cast<float>(i % 256) / 255.0F;
  }
  d.labels = {3, 8};
  const auto path = (dir / "test_batch.bin").string();
  write_cifar10_binary(d, path);
  CHECK(fs::file_size(path) == 2u * 3073u);
  const auto back = load_dataset(dir.string(), DatasetKind::Cifar10Binary);
  CHECK(back.labels == d.labels);
  CHECK(back.images.shape == std::vector<long>{2, 3, 32, 32});
  CHECK(back.images.data[3072 + 5] == doctest::Approx(d.images.data[3072 + 5]));
  fs::resize_file(path, 3073 + 100);
  CHECK_THROWS_AS((void)load_dataset(dir.string(), DatasetKind::Cifar10Binary), FormatError);
  fs::remove_all(dir);
}

TEST_CASE("network parsing is strict") {
  CHECK_NOTHROW((void)parse_network_spec(kTinyNet));
  CHECK_THROWS_AS((void)parse_network_spec(R"({"name":"x","input":[1,4,4],"layers":[],"extra":1})"),
                  ConfigError);
  CHECK_THROWS_AS(
      (void)parse_network_spec(R"({"name":"x","input":[1,4,4],"layers":[{"kind":"relu","pad":1}]})"),
      ConfigError);
  CHECK_THROWS_AS(
      (void)parse_network_spec(R"({"name":"x","input":[1,4,4],"layers":[{"kind":"softmax"}]})"),
      ConfigError);
  CHECK_THROWS_AS((void)parse_network_spec("{not json"), ConfigError);

  auto net = parse_network_spec(kTinyNet);
  CHECK_FALSE(net.bound());
  CHECK(net.output_shape() == Shape3{5, 1, 1});
  auto w = random_weights(net, 1);
  w.erase("f1.bias");
  CHECK_THROWS_AS(bind_weights(net, w), ShapeError);
  w = random_weights(net, 1);
  w["c1.weight"] = FloatTensor({3, 2, 5, 5});
  CHECK_THROWS_AS(bind_weights(net, w), ShapeError);

  const auto specs = tiny_net(1).layer_specs();
  REQUIRE(specs.size() == 2);
  CHECK(specs[0].l == 10);
  CHECK(specs[0].n_mov == 8);
  CHECK(specs[1].m == 48);
}

TEST_CASE("oracle path conv equals a direct-loop reference") {
  const auto net = tiny_net(11);
  const auto qnet = quantize_network(net, {});
  Gen g(403);
  for (int k = 0; k < 20; ++k) {
    const auto img = random_image(g, 128);
    InferenceTrace trace;
    (void)infer(qnet, img, {}, {}, &trace);
    REQUIRE(trace.mac.size() == 2);
    CHECK(trace.mac[0].data == conv_oracle(trace.inputs[0], qnet.weights[0], 1));
    // The fc layer is a 1x1 "conv" over a flattened input.
    QuantizedTensor flat = trace.inputs[1];
    flat.shape = {48, 1, 1};
    QuantizedTensor fw = qnet.weights[4];
    fw.shape = {5, 48, 1, 1};
    CHECK(trace.mac[1].data == conv_oracle(flat, fw, 0));
  }
}

TEST_CASE("relu and pooling act exactly on dequantized values") {
  const auto net = tiny_net(12);
  const auto qnet = quantize_network(net, {});
  Gen g(404);
  const auto img = random_image(g, 128);
  InferenceTrace trace;
  const auto out = infer(qnet, img, {}, {}, &trace);
  const double sw = qnet.weights[0].scale, sa = trace.inputs[0].scale;
  std::vector<float> y(trace.mac[0].data.size());
  for (std::size_t e = 0; e < y.size(); ++e) {
    const double v = static_cast<double>(trace.mac[0].data[e]) * sw * sa + net.biases[0][e / 64];
    y[e] = std::max(0.0F, static_cast<float>(v));
  }
  std::vector<float> pooled(48);
  for (long c = 0; c < 3; ++c)
    for (long r = 0; r < 4; ++r)
      for (long s = 0; s < 4; ++s) {
        float m = -1e30F;
        for (long i = 0; i < 2; ++i)
          for (long j = 0; j < 2; ++j)
            m = std::max(m, y[static_cast<std::size_t>(c * 64 + (2 * r + i) * 8 + 2 * s + j)]);
        pooled[static_cast<std::size_t>(c * 16 + r * 4 + s)] = m;
      }
  const auto q = quantize_linear(pooled, 5);
  CHECK(trace.inputs[1].q == q.q);
  CHECK(trace.inputs[1].scale == doctest::Approx(q.scale));
  for (std::size_t e = 0; e < out.size(); ++e) {
    const double v = static_cast<double>(trace.mac[1].data[e]) * qnet.weights[4].scale * q.scale +
                     net.biases[4][e];
    CHECK(out[e] == doctest::Approx(v));
  }
}

TEST_CASE("error injection adds the frozen map element-wise") {
  const auto net = tiny_net(13);
  const auto qnet = quantize_network(net, {});
  const ImacEngine engine;
  const NoiseSpec noise{NoiseLevel::Digital, 13.17, 0.6, 5};
  const auto maps = sample_error_maps(qnet, noise, 0, 10, engine.bin_products());
  REQUIRE(maps.layers.size() == 2);
  CHECK(maps.layers[0].values.size() == 192u);
  CHECK(maps.layers[1].values.size() == 5u);
  Gen g(405);
  const auto img = random_image(g, 128);
  InferenceTrace clean, noisy;
  (void)infer(qnet, img, {}, {}, &clean);
  (void)infer(qnet, img, maps, {}, &noisy);
  // The first layer sees the same input either way.
  CHECK(noisy.mac[0].data == clean.mac[0].data);
  for (std::size_t e = 0; e < noisy.mac[0].data.size(); ++e) {
    CHECK(noisy.injected[0].data[e] - noisy.mac[0].data[e] == maps.layers[0].values[e]);
  }
  const auto again = sample_error_maps(qnet, noise, 0, 10, engine.bin_products());
  CHECK(again.layers[1].values == maps.layers[1].values);
  const auto other = sample_error_maps(qnet, noise, 1, 10, engine.bin_products());
  CHECK(other.layers[0].values != maps.layers[0].values);
  const auto none = sample_error_maps(qnet, NoiseSpec::none(), 0, 10, engine.bin_products());
  for (long v : none.layers[0].values) CHECK(v == 0);
}

TEST_CASE("engine path agrees with the oracle within one bin per window") {
  const auto net = tiny_net(14);
  const auto qnet = quantize_network(net, {});
  const ImacEngine engine;
  Gen g(406);
  const auto img = random_image(g, 128);
  InferenceTrace oracle, eng;
  (void)infer(qnet, img, {}, {}, &oracle);
  InferOptions opts;
  opts.path = ComputePath::Engine;
  opts.engine = &engine;
  (void)infer(qnet, img, {}, opts, &eng);
  CHECK(eng.inputs[0].q == oracle.inputs[0].q);
  const double windows = std::ceil(18.0 / 10.0);
  for (std::size_t e = 0; e < eng.mac[0].data.size(); ++e) {
    CHECK(std::fabs(static_cast<double>(eng.mac[0].data[e] - oracle.mac[0].data[e])) <=
          windows * engine.bin_products());
  }
  InferOptions bad = opts;
  bad.engine = nullptr;
  CHECK_THROWS_AS((void)infer(qnet, img, {}, bad, nullptr), ConfigError);
  InferOptions analog;
  analog.noise = {NoiseLevel::Analog, 13.17, 0.6, 1};
  CHECK_THROWS_AS((void)infer(qnet, img, {}, analog, nullptr), ConfigError);
}

TEST_CASE("inference is deterministic and thread-count independent") {
  const auto net = tiny_net(15);
  const auto qnet = quantize_network(net, {});
  Gen g(407);
  Dataset d;
  d.images = FloatTensor({40, 2, 8, 8}, g.floats(40 * 128, 0.0, 1.0));
  for (int i = 0; i < 40; ++i) d.labels.push_back(static_cast<std::uint8_t>(g.integer(0, 4)));
  const ImacEngine engine;
  const NoiseSpec noise{NoiseLevel::Digital, 13.17, 0.6, 21};
  const auto a = accuracy_band(qnet, d, noise, 3, engine, ComputePath::Oracle, 1);
  const auto b = accuracy_band(qnet, d, noise, 3, engine, ComputePath::Oracle, 4);
  CHECK(a.per_trial == b.per_trial);
  CHECK(a.min <= a.mean);
  CHECK(a.mean <= a.max);
  CHECK_THROWS_AS((void)accuracy_band(qnet, d, noise, 0, engine), InputDomainError);
  const auto img = random_image(g, 128);
  CHECK(infer_float(net, img) == infer_float(net, img));
  CHECK_THROWS_AS((void)infer_float(net, std::vector<float>(10)), ShapeError);
}

TEST_CASE("argmax breaks ties toward the lowest index") {
  CHECK(argmax(std::vector<float>{1, 3, 3, 2}) == 1);
  CHECK(argmax(std::vector<float>{-1}) == 0);
  CHECK_THROWS_AS((void)argmax(std::vector<float>{}), ShapeError);
}
