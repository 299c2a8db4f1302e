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

#include "imac/nn/infer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "imac/errors.hpp"
#include "imac/parallel.hpp"

namespace imac::nn {

namespace {

struct Activation {
  Shape3 shape{};
  std::vector<float> data;
};

std::size_t volume(const Shape3& s) {
  return static_cast<std::size_t>(s[0]) * static_cast<std::size_t>(s[1]) *
         static_cast<std::size_t>(s[2]);
}

// Zero-pads a [C, H, W] map and converts it to the accumulator type.
template <class Acc, class In>
std::vector<Acc> padded(const In* in, const Shape3& s, long pad) {
  const long hp = s[1] + 2 * pad;
  const long wp = s[2] + 2 * pad;
  std::vector<Acc> out(static_cast<std::size_t>(s[0] * hp * wp), Acc{0});
  for (long c = 0; c < s[0]; ++c) {
    for (long y = 0; y < s[1]; ++y) {
      const In* src = in + (c * s[1] + y) * s[2];
      Acc* dst = out.data() + (c * hp + y + pad) * wp + pad;
      for (long x = 0; x < s[2]; ++x) dst[x] = static_cast<Acc>(src[x]);
    }
  }
  return out;
}

// Stride-1 correlation of a padded [M, Hp, Wp] input with [N, M, K, K]
// weights. The innermost loop runs along output columns.
template <class Acc>
std::vector<Acc> conv_accumulate(const std::vector<Acc>& in, long m, long hp, long wp,
                                 const Acc* w, long n, long k) {
  const long ho = hp - k + 1;
  const long wo = wp - k + 1;
  std::vector<Acc> out(static_cast<std::size_t>(n * ho * wo), Acc{0});
  for (long o = 0; o < n; ++o) {
    Acc* plane = out.data() + o * ho * wo;
    for (long c = 0; c < m; ++c) {
      for (long ky = 0; ky < k; ++ky) {
        for (long kx = 0; kx < k; ++kx) {
          const Acc wv = w[((o * m + c) * k + ky) * k + kx];
          if (wv == Acc{0}) continue;
          for (long y = 0; y < ho; ++y) {
            const Acc* src = in.data() + (c * hp + y + ky) * wp + kx;
            Acc* dst = plane + y * wo;
            for (long x = 0; x < wo; ++x) dst[x] += wv * src[x];
          }
        }
      }
    }
  }
  return out;
}

template <class Acc, class In, class W>
std::vector<Acc> fc_accumulate(const In* in, long fan, const W* w, long n) {
  std::vector<Acc> out(static_cast<std::size_t>(n));
  for (long o = 0; o < n; ++o) {
    Acc sum{0};
    const W* row = w + o * fan;
    for (long i = 0; i < fan; ++i) sum += static_cast<Acc>(row[i]) * static_cast<Acc>(in[i]);
    out[static_cast<std::size_t>(o)] = sum;
  }
  return out;
}

Activation relu(Activation a) {
  for (auto& v : a.data) v = std::max(v, 0.0f);
  return a;
}

Activation maxpool(const Activation& a, long k) {
  Activation out;
  out.shape = {a.shape[0], a.shape[1] / k, a.shape[2] / k};
  out.data.resize(volume(out.shape));
  for (long c = 0; c < out.shape[0]; ++c) {
    for (long y = 0; y < out.shape[1]; ++y) {
      for (long x = 0; x < out.shape[2]; ++x) {
        float best = -std::numeric_limits<float>::infinity();
        for (long dy = 0; dy < k; ++dy) {
          for (long dx = 0; dx < k; ++dx) {
            best = std::max(best, a.data[static_cast<std::size_t>(
                                      (c * a.shape[1] + y * k + dy) * a.shape[2] + x * k + dx)]);
          }
        }
        out.data[static_cast<std::size_t>((c * out.shape[1] + y) * out.shape[2] + x)] = best;
      }
    }
  }
  return out;
}

Activation check_input(const NetworkSpec& net, std::span<const float> image) {
  if (image.size() != volume(net.input)) {
    throw ShapeError("input has " + std::to_string(image.size()) + " values, network expects " +
                     std::to_string(volume(net.input)));
  }
  return {net.input, std::vector<float>(image.begin(), image.end())};
}

// Exact integer MAC of a quantized layer input against quantized weights.
// Float accumulation is exact while every partial sum stays below 2^24.
std::vector<long> oracle_mac(const LayerDef& l, const Shape3& in_shape, const QuantizedTensor& x,
                             const QuantizedTensor& w, long fan_in) {
  const double bound = static_cast<double>(QuantScheme::max_magnitude(x.bits)) *
                       QuantScheme::max_magnitude(w.bits) * static_cast<double>(fan_in);
  std::vector<long> out;
  if (l.kind == LayerKind::Conv) {
    const long hp = in_shape[1] + 2 * l.pad;
    const long wp = in_shape[2] + 2 * l.pad;
    auto run = [&](auto zero) {
      using Acc = decltype(zero);
      const auto in = padded<Acc>(x.q.data(), in_shape, l.pad);
      std::vector<Acc> wv(w.q.begin(), w.q.end());
      const auto acc = conv_accumulate<Acc>(in, in_shape[0], hp, wp, wv.data(), l.out, l.kernel);
      out.assign(acc.size(), 0);
      for (std::size_t i = 0; i < acc.size(); ++i) out[i] = std::lround(acc[i]);
    };
    if (bound < 16777216.0) {
      run(0.0f);
    } else {
      run(0.0);
    }
  } else {
    const auto acc = fc_accumulate<long long>(x.q.data(), fan_in, w.q.data(), l.out);
    out.assign(acc.begin(), acc.end());
  }
  return out;
}

std::vector<SignedWord> words(std::span<const int> q) {
  std::vector<SignedWord> out;
  out.reserve(q.size());
  for (int v : q) out.emplace_back(v);
  return out;
}

// Same products pushed through the analog engine, one output element at a
// time, with the reduction ordered (input map, kernel row, kernel column).
std::vector<long> engine_mac(const LayerDef& l, const Shape3& in_shape, const QuantizedTensor& x,
                             const QuantizedTensor& w, long fan_in, const ImacEngine& engine,
                             const NoiseSpec& noise, RandomStream* rng) {
  std::vector<long> out;
  const auto weights = words(w.q);
  if (l.kind == LayerKind::Fc) {
    const auto vin = words(x.q);
    for (long o = 0; o < l.out; ++o) {
      std::span<const SignedWord> row(weights.data() + o * fan_in, static_cast<std::size_t>(fan_in));
      out.push_back(engine.signed_dot(vin, row, noise, rng).value);
    }
    return out;
  }
  const long hp = in_shape[1] + 2 * l.pad;
  const long wp = in_shape[2] + 2 * l.pad;
  const auto in = padded<int>(x.q.data(), in_shape, l.pad);
  const long ho = hp - l.kernel + 1;
  const long wo = wp - l.kernel + 1;
  std::vector<SignedWord> vin(static_cast<std::size_t>(fan_in));
  for (long o = 0; o < l.out; ++o) {
    std::span<const SignedWord> kern(weights.data() + o * fan_in, static_cast<std::size_t>(fan_in));
    for (long y = 0; y < ho; ++y) {
      for (long xo = 0; xo < wo; ++xo) {
        std::size_t i = 0;
        for (long c = 0; c < in_shape[0]; ++c) {
          for (long ky = 0; ky < l.kernel; ++ky) {
            for (long kx = 0; kx < l.kernel; ++kx) {
              vin[i++] = SignedWord(in[static_cast<std::size_t>((c * hp + y + ky) * wp + xo + kx)]);
            }
          }
        }
        out.push_back(engine.signed_dot(vin, kern, noise, rng).value);
      }
    }
  }
  return out;
}

}  // namespace

ComputePath parse_compute_path(const std::string& s) {
  if (s == "oracle") return ComputePath::Oracle;
  if (s == "engine") return ComputePath::Engine;
  throw ConfigError("unknown compute path '" + s + "' (oracle, engine)");
}

std::vector<long> QuantizedNetwork::output_elements() const {
  std::vector<long> out;
  for (const auto& g : geometry) out.push_back(g.outputs());
  return out;
}

QuantizedNetwork quantize_network(const NetworkSpec& spec, const QuantScheme& scheme) {
  scheme.validate();
  spec.validate();
  QuantizedNetwork q;
  q.spec = spec;
  q.scheme = scheme;
  q.geometry = spec.layer_specs();
  q.weights.resize(spec.layers.size());
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    if (!spec.layers[i].has_weights()) continue;
    q.weights[i] = quantize_linear(spec.weights[i].data, scheme.weight_bits, spec.weights[i].shape);
    q.mac_layers.push_back(i);
  }
  return q;
}

ErrorMaps sample_error_maps(const QuantizedNetwork& net, const NoiseSpec& noise,
                            std::uint64_t trial, int r_amortization, double bin_products) {
  noise.validate();
  ErrorMaps maps;
  const std::uint64_t trial_stream = derive_stream(kTrialDomain, trial);
  for (std::size_t j = 0; j < net.geometry.size(); ++j) {
    RandomStream rng(noise.seed, derive_stream(trial_stream, j));
    maps.layers.push_back(sample_error_map(net.geometry[j], noise, r_amortization, bin_products, rng));
  }
  return maps;
}

std::vector<float> infer_float(const NetworkSpec& net, std::span<const float> image) {
  if (!net.bound()) throw ShapeError("network " + net.name + " has unbound weights");
  Activation a = check_input(net, image);
  const auto shapes = net.shapes();
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const auto& l = net.layers[i];
    switch (l.kind) {
      case LayerKind::Conv: {
        const auto in = padded<float>(a.data.data(), a.shape, l.pad);
        auto acc = conv_accumulate<float>(in, a.shape[0], a.shape[1] + 2 * l.pad,
                                          a.shape[2] + 2 * l.pad, net.weights[i].data.data(), l.out,
                                          l.kernel);
        const long plane = shapes[i][1] * shapes[i][2];
        for (std::size_t e = 0; e < acc.size(); ++e) acc[e] += net.biases[i][e / static_cast<std::size_t>(plane)];
        a = {shapes[i], std::move(acc)};
        break;
      }
      case LayerKind::Fc: {
        const long fan = static_cast<long>(a.data.size());
        const auto acc = fc_accumulate<double>(a.data.data(), fan, net.weights[i].data.data(), l.out);
        std::vector<float> y(acc.size());
        for (std::size_t e = 0; e < acc.size(); ++e) {
          y[e] = static_cast<float>(acc[e] + static_cast<double>(net.biases[i][e]));
        }
        a = {shapes[i], std::move(y)};
        break;
      }
      case LayerKind::MaxPool: a = maxpool(a, l.kernel); break;
      case LayerKind::Relu: a = relu(std::move(a)); break;
      case LayerKind::Dropout: break;
    }
  }
  return a.data;
}

std::vector<float> infer(const QuantizedNetwork& net, std::span<const float> image,
                         const ErrorMaps& errors, const InferOptions& opts, InferenceTrace* trace) {
  const NetworkSpec& spec = net.spec;
  Activation a = check_input(spec, image);
  const auto shapes = spec.shapes();

  if (opts.noise.level == NoiseLevel::Analog && opts.path == ComputePath::Oracle) {
    throw ConfigError("analog noise needs the engine path");
  }
  std::optional<RandomStream> rng;
  NoiseSpec window_noise = NoiseSpec::none();
  if (opts.path == ComputePath::Engine) {
    if (opts.engine == nullptr) throw ConfigError("engine path needs an ImacEngine");
    if (net.scheme.weight_bits > 5 || net.scheme.activation_bits > 5) {
      throw ConfigError("engine path stores 4-bit magnitudes; use <= 5-bit quantization");
    }
    if (opts.noise.level == NoiseLevel::Analog) {
      window_noise = opts.noise;
      rng.emplace(opts.noise.seed,
                  derive_stream(derive_stream(kTrialDomain + 1, opts.trial), opts.image_index));
    }
  }
  if (trace != nullptr) *trace = {};

  std::size_t j = 0;
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const auto& l = spec.layers[i];
    switch (l.kind) {
      case LayerKind::Conv:
      case LayerKind::Fc: {
        const LayerSpec& g = net.geometry[j];
        const QuantizedTensor& w = net.weights[i];
        const QuantizedTensor x = quantize_linear(a.data, net.scheme.activation_bits,
                                                  {a.shape[0], a.shape[1], a.shape[2]});
        std::vector<long> mac =
            opts.path == ComputePath::Oracle
                ? oracle_mac(l, a.shape, x, w, g.fan_in())
                : engine_mac(l, a.shape, x, w, g.fan_in(), *opts.engine, window_noise,
                             rng ? &*rng : nullptr);
        const std::vector<long> out_shape{shapes[i][0], shapes[i][1], shapes[i][2]};
        if (trace != nullptr) {
          trace->inputs.push_back(x);
          trace->mac.emplace_back(out_shape, mac);
        }
        for (std::size_t e = 0; e < mac.size(); ++e) mac[e] += errors.at(j, e);
        const long plane = shapes[i][1] * shapes[i][2];
        std::vector<float> y(mac.size());
        for (std::size_t e = 0; e < mac.size(); ++e) {
          const double bias = spec.biases[i][e / static_cast<std::size_t>(plane)];
          y[e] = static_cast<float>(static_cast<double>(mac[e]) * w.scale * x.scale + bias);
        }
        if (trace != nullptr) trace->injected.emplace_back(out_shape, std::move(mac));
        a = {shapes[i], std::move(y)};
        ++j;
        break;
      }
      case LayerKind::MaxPool: a = maxpool(a, l.kernel); break;
      case LayerKind::Relu: a = relu(std::move(a)); break;
      case LayerKind::Dropout: break;
    }
  }
  return a.data;
}

int argmax(std::span<const float> scores) {
  if (scores.empty()) throw ShapeError("argmax of an empty score vector");
  return static_cast<int>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

namespace {

template <class F>
double fraction_correct(const Dataset& data, unsigned threads, F&& classify) {
  const auto n = static_cast<std::size_t>(data.count());
  if (n == 0) throw ShapeError("empty dataset");
  const auto per = static_cast<std::size_t>(data.image_size());
  std::vector<char> hit(n, 0);
  parallel_for(
      n,
      [&](std::size_t i) {
        std::span<const float> img(data.images.data.data() + i * per, per);
        hit[i] = classify(img, i) == data.labels[i] ? 1 : 0;
      },
      threads);
  const auto correct = std::count(hit.begin(), hit.end(), 1);
  return static_cast<double>(correct) / static_cast<double>(n);
}

}  // namespace

double accuracy_float(const NetworkSpec& net, const Dataset& data, unsigned threads) {
  return fraction_correct(data, threads, [&](std::span<const float> img, std::size_t) {
    return argmax(infer_float(net, img));
  });
}

double accuracy(const QuantizedNetwork& net, const Dataset& data, const ErrorMaps& errors,
                const InferOptions& opts, unsigned threads) {
  return fraction_correct(data, threads, [&](std::span<const float> img, std::size_t i) {
    InferOptions o = opts;
    o.image_index = i;
    return argmax(infer(net, img, errors, o));
  });
}

AccuracyBand accuracy_band(const QuantizedNetwork& net, const Dataset& data,
                           const NoiseSpec& noise, std::uint64_t trials, const ImacEngine& engine,
                           ComputePath path, unsigned threads) {
  if (trials == 0) throw InputDomainError("accuracy_band: trials must be >= 1");
  AccuracyBand band;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const ErrorMaps maps =
        sample_error_maps(net, noise, t, engine.array().r_amortization, engine.bin_products());
    InferOptions opts{path, &engine, noise, 0, t};
    band.per_trial.push_back(accuracy(net, data, maps, opts, threads));
  }
  const auto n = static_cast<double>(trials);
  double sum = 0.0;
  for (double v : band.per_trial) sum += v;
  band.mean = sum / n;
  double ss = 0.0;
  for (double v : band.per_trial) ss += (v - band.mean) * (v - band.mean);
  band.stddev = std::sqrt(ss / n);
  const auto [lo, hi] = std::minmax_element(band.per_trial.begin(), band.per_trial.end());
  band.min = *lo;
  band.max = *hi;
  return band;
}

}  // namespace imac::nn
