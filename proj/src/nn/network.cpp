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

#include "imac/nn/network.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "imac/errors.hpp"
#include "imac/rng.hpp"

namespace imac::nn {

using nlohmann::json;

namespace {

LayerKind parse_kind(const std::string& s) {
  if (s == "conv") return LayerKind::Conv;
  if (s == "fc") return LayerKind::Fc;
  if (s == "maxpool") return LayerKind::MaxPool;
  if (s == "relu") return LayerKind::Relu;
  if (s == "dropout") return LayerKind::Dropout;
  throw ConfigError("unknown layer kind '" + s + "'");
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

long positive(const json& obj, const char* key, long fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long>() < 0) {
    throw ConfigError(where + ": '" + key + "' must be a non-negative integer");
  }
  return v.get<long>();
}

}  // namespace

std::string to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::Conv: return "conv";
    case LayerKind::Fc: return "fc";
    case LayerKind::MaxPool: return "maxpool";
    case LayerKind::Relu: return "relu";
    case LayerKind::Dropout: return "dropout";
  }
  return "?";
}

std::vector<Shape3> NetworkSpec::shapes() const {
  std::vector<Shape3> out;
  Shape3 s = input;
  for (const auto& l : layers) {
    const std::string where = "layer " + (l.name.empty() ? to_string(l.kind) : l.name);
    switch (l.kind) {
      case LayerKind::Conv: {
        const long side = s[1] + 2 * l.pad;
        if (s[1] != s[2]) throw ShapeError(where + ": conv expects square maps");
        if (l.kernel < 1 || l.kernel > side || l.out < 1) throw ShapeError(where + ": bad conv geometry");
        s = {l.out, side - l.kernel + 1, side - l.kernel + 1};
        break;
      }
      case LayerKind::Fc:
        if (l.out < 1) throw ShapeError(where + ": fc needs out >= 1");
        s = {l.out, 1, 1};
        break;
      case LayerKind::MaxPool:
        if (l.kernel < 1 || s[1] < l.kernel || s[2] < l.kernel) {
          throw ShapeError(where + ": pooling window larger than the map");
        }
        s = {s[0], s[1] / l.kernel, s[2] / l.kernel};
        break;
      case LayerKind::Relu:
      case LayerKind::Dropout:
        break;
    }
    out.push_back(s);
  }
  return out;
}

Shape3 NetworkSpec::output_shape() const {
  const auto s = shapes();
  return s.empty() ? input : s.back();
}

bool NetworkSpec::bound() const {
  if (weights.size() != layers.size() || biases.size() != layers.size()) return false;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].has_weights() && weights[i].data.empty()) return false;
  }
  return true;
}

void NetworkSpec::validate() const {
  if (input[0] < 1 || input[1] < 1 || input[2] < 1) throw ShapeError("network input must be positive");
  const auto s = shapes();
  if (!bound()) throw ShapeError("network " + name + " has unbound weights");
  Shape3 in = input;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    if (l.has_weights()) {
      const long fan = l.kind == LayerKind::Conv ? in[0] * l.kernel * l.kernel : in[0] * in[1] * in[2];
      const std::vector<long> want = l.kind == LayerKind::Conv
                                         ? std::vector<long>{l.out, in[0], l.kernel, l.kernel}
                                         : std::vector<long>{l.out, fan};
      if (weights[i].shape != want) {
        throw ShapeError(l.name + ".weight is " + shape_string(weights[i].shape) + ", expected " +
                         shape_string(want));
      }
      if (biases[i].shape != std::vector<long>{l.out}) {
        throw ShapeError(l.name + ".bias is " + shape_string(biases[i].shape) + ", expected [" +
                         std::to_string(l.out) + "]");
      }
    }
    in = s[i];
  }
}

std::vector<LayerSpec> NetworkSpec::layer_specs() const {
  const auto s = shapes();
  std::vector<LayerSpec> out;
  Shape3 in = input;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    if (l.kind == LayerKind::Conv) {
      out.push_back({l.name, in[0], l.out, l.kernel, in[1] + 2 * l.pad, s[i][1]});
    } else if (l.kind == LayerKind::Fc) {
      out.push_back(LayerSpec::fc(l.name, in[0] * in[1] * in[2], l.out));
    }
    in = s[i];
  }
  return out;
}

NetworkSpec parse_network_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("network spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("network spec must be a JSON object");
  reject_unknown(doc, {"name", "input", "layers"}, "network");

  NetworkSpec net;
  net.name = doc.value("name", std::string("network"));
  const auto& input = doc.at("input");
  if (!input.is_array() || input.size() != 3) throw ConfigError("network: 'input' must be [C, H, W]");
  for (std::size_t i = 0; i < 3; ++i) {
    if (!input[i].is_number_integer() || input[i].get<long>() < 1) {
      throw ConfigError("network: 'input' entries must be positive integers");
    }
    net.input[i] = input[i].get<long>();
  }
  if (!doc.contains("layers") || !doc.at("layers").is_array()) {
    throw ConfigError("network: 'layers' must be an array");
  }
  std::set<std::string> names;
  for (const auto& item : doc.at("layers")) {
    if (!item.is_object() || !item.contains("kind") || !item.at("kind").is_string()) {
      throw ConfigError("network: every layer needs a string 'kind'");
    }
    LayerDef l;
    l.kind = parse_kind(item.at("kind").get<std::string>());
    l.name = item.value("name", std::string());
    const std::string where = "layer " + (l.name.empty() ? to_string(l.kind) : l.name);
    switch (l.kind) {
      case LayerKind::Conv:
        reject_unknown(item, {"kind", "name", "out", "kernel", "pad"}, where);
        l.out = positive(item, "out", 0, where);
        l.kernel = positive(item, "kernel", 0, where);
        l.pad = positive(item, "pad", 0, where);
        break;
      case LayerKind::Fc:
        reject_unknown(item, {"kind", "name", "out"}, where);
        l.out = positive(item, "out", 0, where);
        break;
      case LayerKind::MaxPool:
        reject_unknown(item, {"kind", "name", "kernel"}, where);
        l.kernel = positive(item, "kernel", 2, where);
        break;
      case LayerKind::Relu:
        reject_unknown(item, {"kind", "name"}, where);
        break;
      case LayerKind::Dropout:
        reject_unknown(item, {"kind", "name", "rate"}, where);
        break;
    }
    if (l.has_weights()) {
      if (l.name.empty()) throw ConfigError(where + ": conv and fc layers need a name");
      if (!names.insert(l.name).second) throw ConfigError("duplicate layer name " + l.name);
    }
    net.layers.push_back(std::move(l));
  }
  net.weights.resize(net.layers.size());
  net.biases.resize(net.layers.size());
  try {
    (void)net.shapes();
  } catch (const ShapeError& e) {
    throw ConfigError(e.what());
  }
  return net;
}

NetworkSpec load_network_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open network spec " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_network_spec(ss.str());
}

void bind_weights(NetworkSpec& net, const TensorMap& tensors) {
  net.weights.assign(net.layers.size(), {});
  net.biases.assign(net.layers.size(), {});
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const auto& l = net.layers[i];
    if (!l.has_weights()) continue;
    const auto w = tensors.find(l.name + ".weight");
    const auto b = tensors.find(l.name + ".bias");
    if (w == tensors.end()) throw ShapeError("missing tensor " + l.name + ".weight");
    if (b == tensors.end()) throw ShapeError("missing tensor " + l.name + ".bias");
    net.weights[i] = w->second;
    net.biases[i] = b->second;
  }
  net.validate();
}

TensorMap random_weights(const NetworkSpec& net, std::uint64_t seed) {
  TensorMap out;
  const auto s = net.shapes();
  Shape3 in = net.input;
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const auto& l = net.layers[i];
    if (l.has_weights()) {
      const bool conv = l.kind == LayerKind::Conv;
      const long fan = conv ? in[0] * l.kernel * l.kernel : in[0] * in[1] * in[2];
      const std::vector<long> shape = conv ? std::vector<long>{l.out, in[0], l.kernel, l.kernel}
                                           : std::vector<long>{l.out, fan};
      RandomStream rng(seed, derive_stream(0x57454947ull, i));
      const double bound = std::sqrt(6.0 / static_cast<double>(fan));
      FloatTensor w(shape);
      for (auto& v : w.data) v = static_cast<float>((2.0 * rng.uniform() - 1.0) * bound);
      FloatTensor b({l.out});
      for (auto& v : b.data) v = static_cast<float>(0.01 * rng.normal());
      out.emplace(l.name + ".weight", std::move(w));
      out.emplace(l.name + ".bias", std::move(b));
    }
    in = s[i];
  }
  return out;
}

}  // namespace imac::nn
