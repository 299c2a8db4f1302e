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

#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "imac/config.hpp"
#include "imac/errors.hpp"
#include "imac/montecarlo.hpp"
#include "imac/nn/dataset.hpp"
#include "imac/nn/infer.hpp"
#include "imac/nn/network.hpp"
#include "imac/nn/tensor_file.hpp"
#include "imac/parallel.hpp"
#include "imac/perf.hpp"

namespace imac::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct Common {
  std::string config_path;
  std::string out_dir;
  std::string format;
  std::optional<std::uint64_t> seed;
};

SimConfig load(const Common& c) {
  if (c.config_path.empty()) return SimConfig{};
  if (!fs::exists(c.config_path)) throw ConfigError("configuration not found: " + c.config_path);
  return load_config(c.config_path);
}

// Writes `content` to out_dir/name, or to the stream when no directory is set.
class Sink {
 public:
  Sink(std::string dir, std::ostream& out) : dir_(std::move(dir)), out_(out) {
    if (!dir_.empty()) {
      std::error_code ec;
      fs::create_directories(dir_, ec);
      if (ec) throw IoError("cannot create output directory " + dir_);
    }
  }
  [[nodiscard]] bool to_files() const { return !dir_.empty(); }
  void put(const std::string& name, const std::string& content) {
    if (dir_.empty()) {
      out_ << content;
      return;
    }
    const fs::path p = fs::path(dir_) / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot write " + p.string());
    f << content;
    if (!f) throw IoError("write failed for " + p.string());
  }

 private:
  std::string dir_;
  std::ostream& out_;
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << std::fixed << v;
  return s.str();
}

// Full-precision shortest form for CSV cells.
std::string num(double v) { return ordered_json(v).dump(); }

void require_path(const std::string& path, const std::string& what) {
  if (!fs::exists(path)) throw ConfigError(what + " not found: " + path);
}

std::vector<SignedWord> parse_operands(const std::string& list, const std::string& flag) {
  std::vector<SignedWord> out;
  std::stringstream ss(list);
  std::string item;
  std::size_t index = 0;
  while (std::getline(ss, item, ',')) {
    long v = 0;
    std::size_t used = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw InputDomainError(flag + "[" + std::to_string(index) + "] = '" + item +
                             "' is not an integer");
    }
    if (v < -kMaxMagnitude || v > kMaxMagnitude) {
      throw InputDomainError(flag + "[" + std::to_string(index) + "] = " + std::to_string(v) +
                             " outside [-" + std::to_string(kMaxMagnitude) + ", " +
                             std::to_string(kMaxMagnitude) + "]");
    }
    out.emplace_back(static_cast<int>(v));
    ++index;
  }
  if (out.empty()) throw InputDomainError(flag + " is empty");
  return out;
}

NoiseSpec noise_from(const SimConfig& cfg, const std::string& level, const Common& c) {
  NoiseSpec n = cfg.noise;
  if (!level.empty()) n.level = parse_noise_level(level);
  if (c.seed) n.seed = *c.seed;
  n.validate();
  return n;
}

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (f == a) return;
  }
  throw ConfigError("unsupported --format '" + f + "'");
}

// ---------------------------------------------------------------- mac

struct MacArgs {
  std::string vin, w, noise;
  bool trace = false;
};

int cmd_mac(const Common& c, const MacArgs& a, std::ostream& out) {
  const std::string format = c.format.empty() ? "text" : c.format;
  check_format(format, {"text", "json"});
  const SimConfig cfg = load(c);
  const auto vin = parse_operands(a.vin, "vin");
  const auto w = parse_operands(a.w, "w");
  if (vin.size() != w.size()) {
    throw InputDomainError("vin has " + std::to_string(vin.size()) + " operands, w has " +
                           std::to_string(w.size()));
  }
  const NoiseSpec noise = noise_from(cfg, a.noise, c);
  const ImacEngine engine = cfg.engine();
  RandomStream rng(noise.seed, derive_stream(0x4d4143ull, 0));
  const NoiseSpec window_noise = noise.level == NoiseLevel::Analog ? noise : NoiseSpec::none();
  const DotResult r = engine.signed_dot(vin, w, window_noise, &rng, a.trace);
  long injected = 0;
  if (noise.level == NoiseLevel::Digital) {
    RandomStream err_rng(noise.seed, derive_stream(0x4d4143ull, 1));
    injected = sample_error_map({1}, static_cast<long>(vin.size()), noise,
                                engine.array().r_amortization, engine.bin_products(), err_rng)
                   .at(0);
  }
  const long decoded = r.value + injected;

  if (format == "json") {
    ordered_json j;
    j["decoded"] = decoded;
    j["exact"] = r.exact;
    j["injected_error"] = injected;
    j["bin_products"] = engine.bin_products();
    j["noise"] = to_string(noise.level);
    j["seed"] = noise.seed;
    ordered_json windows = ordered_json::array();
    for (const auto& win : r.windows) {
      ordered_json wj;
      wj["v_acc_pos_mv"] = win.state.v_pos_mv;
      wj["v_acc_neg_mv"] = win.state.v_neg_mv;
      wj["n_pos"] = win.state.n_pos;
      wj["n_neg"] = win.state.n_neg;
      wj["code_pos"] = win.code_pos;
      wj["code_neg"] = win.code_neg;
      wj["value"] = win.value;
      wj["exact"] = win.exact;
      if (a.trace) {
        ordered_json els = ordered_json::array();
        for (const auto& e : win.elements) {
          els.push_back({{"vin", e.vin.value()},
                         {"w", e.w.value()},
                         {"blb_mv", e.blb_mv},
                         {"v_ch_sh_mv", e.product_mv},
                         {"delta_v_acc_mv", e.delta_v_mv},
                         {"capacitor", e.routed_to == Sign::Positive ? "pos" : "neg"}});
        }
        wj["elements"] = els;
      }
      windows.push_back(wj);
    }
    j["windows"] = windows;
    out << j.dump(2) << "\n";
    return kOk;
  }

  for (std::size_t i = 0; i < r.windows.size(); ++i) {
    const auto& win = r.windows[i];
    out << "window " << i << "\n";
    if (a.trace) {
      for (std::size_t k = 0; k < win.elements.size(); ++k) {
        const auto& e = win.elements[k];
        out << "  [" << k << "] vin=" << e.vin.value() << " w=" << e.w.value() << " BLB(b3..b0)=";
        for (int b = 3; b >= 0; --b) out << fmt(e.blb_mv[static_cast<std::size_t>(b)], 3) << (b ? "/" : "");
        out << " mV  V_ch-sh=" << fmt(e.product_mv, 3) << " mV  dV_acc=" << fmt(e.delta_v_mv, 3)
            << " mV -> C_" << (e.routed_to == Sign::Positive ? "pos" : "neg") << "\n";
      }
    }
    out << "  V_acc+=" << fmt(win.state.v_pos_mv, 3) << " mV  V_acc-=" << fmt(win.state.v_neg_mv, 3)
        << " mV  code+=" << win.code_pos << " code-=" << win.code_neg << "  value=" << win.value
        << " (exact " << win.exact << ")\n";
  }
  if (noise.level == NoiseLevel::Digital) out << "injected error: " << injected << "\n";
  out << "decoded: " << decoded << "\nexact: " << r.exact << "\nbin: " << fmt(engine.bin_products(), 3)
      << " products\n";
  return kOk;
}

// ---------------------------------------------------------------- montecarlo

struct MonteCarloArgs {
  std::string vin, w;
  std::uint64_t trials = 1000;
  std::optional<double> sigma;
};

int cmd_montecarlo(const Common& c, const MonteCarloArgs& a, std::ostream& out) {
  const std::string format = c.format.empty() ? "csv" : c.format;
  check_format(format, {"csv", "json"});
  const SimConfig cfg = load(c);
  const auto vin = parse_operands(a.vin, "vin");
  const auto w = parse_operands(a.w, "w");
  if (vin.size() != w.size()) throw InputDomainError("vin and w lengths differ");
  NoiseSpec noise = noise_from(cfg, "analog", c);
  if (a.sigma) noise.sigma_analog_mv = *a.sigma;
  noise.validate();
  const auto r = monte_carlo_mac(cfg.engine(), vin, w, a.trials, noise);

  std::string csv = "code,count\n";
  for (std::size_t k = 0; k < r.counts.size(); ++k) {
    csv += std::to_string(k) + "," + std::to_string(r.counts[k]) + "\n";
  }
  ordered_json summary;
  summary["trials"] = r.trials;
  summary["seed"] = r.seed;
  summary["sigma_analog_mv"] = noise.sigma_analog_mv;
  summary["capacitor"] = r.capacitor == Sign::Positive ? "pos" : "neg";
  summary["nominal_code"] = r.nominal_code;
  summary["mean_code"] = r.mean;
  summary["std_code"] = r.stddev;

  Sink sink(c.out_dir, out);
  if (sink.to_files()) {
    sink.put("histogram.csv", csv);
    sink.put("summary.json", summary.dump(2) + "\n");
  } else if (format == "csv") {
    sink.put("", csv);
  } else {
    summary["histogram"] = r.counts;
    sink.put("", summary.dump(2) + "\n");
  }
  return kOk;
}

// ---------------------------------------------------------------- infer

struct InferArgs {
  std::string net, weights, data, dataset = "mnist-idx", noise, path = "oracle";
  std::uint64_t trials = 1;
  long limit = 0;
  int weight_bits = 5;
  int activation_bits = 5;
  bool baselines = false;
};

int cmd_infer(const Common& c, const InferArgs& a, std::ostream& out) {
  const std::string format = c.format.empty() ? "json" : c.format;
  check_format(format, {"csv", "json"});
  require_path(a.net, "network spec");
  require_path(a.weights, "weight file");
  require_path(a.data, "dataset directory");
  const SimConfig cfg = load(c);
  const NoiseSpec noise = noise_from(cfg, a.noise, c);
  const auto path = nn::parse_compute_path(a.path);

  nn::NetworkSpec net = nn::load_network_spec(a.net);
  nn::bind_weights(net, nn::read_tensor_file(a.weights));
  nn::Dataset data = nn::load_dataset(a.data, nn::parse_dataset_kind(a.dataset));
  if (a.limit > 0) data = data.head(a.limit);
  const nn::QuantScheme scheme{a.weight_bits, a.activation_bits, true};
  const auto qnet = nn::quantize_network(net, scheme);
  const ImacEngine engine = cfg.engine();

  ordered_json j;
  j["network"] = net.name;
  j["images"] = data.count();
  j["weight_bits"] = scheme.weight_bits;
  j["activation_bits"] = scheme.activation_bits;
  j["path"] = a.path;
  j["noise"] = to_string(noise.level);
  j["seed"] = noise.seed;
  j["trials"] = a.trials;
  if (a.baselines) {
    j["float_accuracy"] = nn::accuracy_float(net, data);
    nn::InferOptions clean{path, &engine, NoiseSpec::none(), 0, 0};
    j["quantized_accuracy"] = nn::accuracy(qnet, data, {}, clean);
  }
  const auto band = nn::accuracy_band(qnet, data, noise, a.trials, engine, path);
  j["band"] = {{"mean", band.mean}, {"std", band.stddev}, {"min", band.min}, {"max", band.max}};

  std::string csv = "trial,accuracy\n";
  for (std::size_t t = 0; t < band.per_trial.size(); ++t) {
    csv += std::to_string(t) + "," + num(band.per_trial[t]) + "\n";
  }
  Sink sink(c.out_dir, out);
  if (sink.to_files()) {
    sink.put("trials.csv", csv);
    sink.put("summary.json", j.dump(2) + "\n");
  } else if (format == "csv") {
    sink.put("", csv);
  } else {
    j["per_trial"] = band.per_trial;
    sink.put("", j.dump(2) + "\n");
  }
  return kOk;
}

// ---------------------------------------------------------------- perf

struct PerfArgs {
  std::string net, sweep;
  std::optional<double> b_io;
  bool area = false;
  bool ceil = false;
};

std::vector<double> parse_sweep(const std::string& s) {
  double lo = 0, hi = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof()) {
    throw ConfigError("--sweep-bio expects lo:hi:step, got '" + s + "'");
  }
  if (lo <= 0 || hi < lo || step <= 0) throw ConfigError("--sweep-bio needs 0 < lo <= hi, step > 0");
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double v = lo + static_cast<double>(i) * step;
    if (v > hi + 1e-9 * hi) break;
    out.push_back(v);
  }
  return out;
}

int cmd_perf(const Common& c, const PerfArgs& a, std::ostream& out) {
  const std::string format = c.format.empty() ? "csv" : c.format;
  check_format(format, {"csv", "json"});
  SimConfig cfg = load(c);
  if (a.b_io) cfg.perf.b_io = *a.b_io;
  if (a.ceil) cfg.perf.ceil_occupancy = true;
  cfg.perf.validate();

  std::vector<LayerSpec> layers;
  std::string net_name;
  if (!a.net.empty()) {
    require_path(a.net, "network spec");
    const auto net = nn::load_network_spec(a.net);
    layers = net.layer_specs();
    net_name = net.name;
  } else if (!a.area) {
    throw ConfigError("perf needs --net (or --area alone)");
  }

  ordered_json j;
  std::string layers_csv, sweep_csv, area_csv;
  if (!layers.empty()) {
    const auto rep = perf::compare_network(layers, cfg.perf);
    layers_csv =
        "layer,t_vn_ns,e_vn_pj,t_imac_ns,e_imac_pj,energy_ratio,delay_ratio,edp_ratio\n";
    ordered_json rows = ordered_json::array();
    auto row = [&](const perf::LayerReport& r) {
      layers_csv += r.name + "," + num(r.t_vn.value()) + "," + num(r.e_vn.value()) + "," +
                    num(r.t_imac.value()) + "," + num(r.e_imac.value()) + "," +
                    num(r.energy_ratio()) + "," + num(r.delay_ratio()) + "," + num(r.edp_ratio()) +
                    "\n";
      return ordered_json{{"layer", r.name},
                          {"t_vn_ns", r.t_vn.value()},
                          {"e_vn_pj", r.e_vn.value()},
                          {"t_imac_ns", r.t_imac.value()},
                          {"e_imac_pj", r.e_imac.value()},
                          {"energy_ratio", r.energy_ratio()},
                          {"delay_ratio", r.delay_ratio()},
                          {"edp_ratio", r.edp_ratio()}};
    };
    for (const auto& r : rep.layers) rows.push_back(row(r));
    j["network"] = net_name;
    j["b_io"] = cfg.perf.b_io;
    j["layers"] = rows;
    j["total"] = row(rep.total);
    j["imac_energy_per_inference_nj"] = perf::per_inference_energy(layers, cfg.perf).value();
  }
  if (!a.sweep.empty()) {
    if (layers.empty()) throw ConfigError("--sweep-bio needs --net");
    const auto pts = perf::sweep_bio(layers, cfg.perf, parse_sweep(a.sweep));
    sweep_csv = "b_io,energy_ratio,delay_ratio,edp_ratio\n";
    ordered_json arr = ordered_json::array();
    for (const auto& p : pts) {
      sweep_csv += num(p.b_io) + "," + num(p.energy_ratio) + "," + num(p.delay_ratio) + "," +
                   num(p.edp_ratio) + "\n";
      arr.push_back({{"b_io", p.b_io},
                     {"energy_ratio", p.energy_ratio},
                     {"delay_ratio", p.delay_ratio},
                     {"edp_ratio", p.edp_ratio}});
    }
    j["sweep"] = arr;
  }
  if (a.area) {
    const auto t = perf::AreaTable::defaults();
    area_csv = "component,area_um2,compute_periphery\n";
    ordered_json comps = ordered_json::array();
    for (const auto& comp : t.components) {
      area_csv += comp.name + "," + num(comp.um2) + "," + (comp.compute_periphery ? "1" : "0") + "\n";
      comps.push_back({{"component", comp.name},
                       {"area_um2", comp.um2},
                       {"compute_periphery", comp.compute_periphery}});
    }
    area_csv += "total," + num(t.total()) + ",\n";
    j["area"] = {{"components", comps},
                 {"total_um2", t.total()},
                 {"compute_periphery_fraction", t.compute_periphery_fraction()},
                 {"non_cell_fraction", t.non_cell_fraction()}};
  }

  Sink sink(c.out_dir, out);
  if (sink.to_files()) {
    if (!layers_csv.empty()) sink.put("layers.csv", layers_csv);
    if (!sweep_csv.empty()) sink.put("sweep.csv", sweep_csv);
    if (!area_csv.empty()) sink.put("area.csv", area_csv);
    sink.put("summary.json", j.dump(2) + "\n");
  } else if (format == "json") {
    sink.put("", j.dump(2) + "\n");
  } else {
    std::string all;
    for (const auto* part : {&layers_csv, &sweep_csv, &area_csv}) {
      if (part->empty()) continue;
      if (!all.empty()) all += "\n";
      all += *part;
    }
    sink.put("", all);
  }
  return kOk;
}

// ---------------------------------------------------------------- params

struct ParamsArgs {
  bool dump = false;
  bool adc_table = false;
  bool check = false;
};

int cmd_params(const Common& c, const ParamsArgs& a, std::ostream& out) {
  const SimConfig cfg = load(c);
  int code = kOk;
  const bool any = a.dump || a.adc_table || a.check;
  if (a.dump || !any) out << dump_config(cfg);
  if (a.adc_table) {
    out << "code,v_lo_mv,v_hi_mv,v_center_mv,products_per_capacitor\n";
    for (const auto& b : adc_code_table(cfg.adc)) {
      out << b.code << "," << num(b.lo_mv) << "," << num(b.hi_mv) << "," << num(b.center_mv) << ","
          << num(decode_capacitor(b.code, cfg.device.n_acc, cfg.adc, cfg.device)) << "\n";
    }
  }
  if (a.check) {
    const auto r = check_constraints(cfg.device);
    ordered_json j{{"sample_above_threshold", r.sample_above_threshold},
                   {"sample_slack_mv", r.sample_slack_mv},
                   {"headroom_ok", r.headroom_ok},
                   {"headroom_slack_mv", r.headroom_slack_mv},
                   {"worst_case_v_acc_mv", r.worst_case_v_acc_mv},
                   {"min_c_acc_ff", r.min_c_acc_ff},
                   {"ok", r.ok()}};
    out << j.dump(2) << "\n";
    if (!r.ok()) code = kConstraint;
  }
  return code;
}

// ---------------------------------------------------------------- fixture

struct FixtureArgs {
  std::string net;
  std::string out;
  long count = 500;
};

// Class-dependent smooth colour fields plus pixel noise: structured enough
// for non-degenerate activations, with no claim to resemble real images.
nn::Dataset synthetic_cifar(long count, std::uint64_t seed) {
  nn::Dataset d;
  d.images = nn::FloatTensor({count, 3, 32, 32});
  d.labels.resize(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    RandomStream rng(seed, derive_stream(0x43494641ull, static_cast<std::uint64_t>(i)));
    const int label = static_cast<int>(rng.next_u32() % 10u);
    d.labels[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(label);
    const double fx = 1.0 + label % 4;
    const double fy = 1.0 + label / 4;
    for (long ch = 0; ch < 3; ++ch) {
      const double phase = 2.0 * rng.uniform() + ch;
      for (long y = 0; y < 32; ++y) {
        for (long x = 0; x < 32; ++x) {
          const double base = 0.5 + 0.35 * std::sin(fx * x / 5.0 + fy * y / 7.0 + phase);
          const double v = std::clamp(base + 0.08 * rng.normal(), 0.0, 1.0);
          d.images[static_cast<std::size_t>(((i * 3 + ch) * 32 + y) * 32 + x)] =
              static_cast<float>(std::round(v * 255.0) / 255.0);
        }
      }
    }
  }
  return d;
}

int cmd_fixture_cifar(const Common& c, const FixtureArgs& a, std::ostream& out) {
  if (a.count < 1) throw ConfigError("--count must be >= 1");
  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) throw IoError("cannot create " + a.out);
  const auto path = (fs::path(a.out) / "test_batch.bin").string();
  nn::write_cifar10_binary(synthetic_cifar(a.count, c.seed.value_or(0)), path);
  out << "wrote " << a.count << " records to " << path << "\n";
  return kOk;
}

int cmd_fixture_weights(const Common& c, const FixtureArgs& a, std::ostream& out) {
  require_path(a.net, "network spec");
  const auto net = nn::load_network_spec(a.net);
  nn::write_tensor_file(a.out, nn::random_weights(net, c.seed.value_or(0)));
  out << "wrote random weights for " << net.name << " to " << a.out << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Behavioural simulator of an in-SRAM analog multiply-accumulate pipeline", "imac-sim"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--config", common.config_path, "JSON configuration file");
  app.add_option("--seed", common.seed, "random seed (overrides the configuration)");
  app.add_option("--format", common.format, "output format");
  app.add_option("--out", common.out_dir, "write result files into this directory");

  MacArgs mac;
  auto* s_mac = app.add_subcommand("mac", "one signed dot product through the analog pipeline");
  s_mac->add_option("--vin", mac.vin, "comma-separated signed inputs, |v| <= 15")->required();
  s_mac->add_option("--w", mac.w, "comma-separated signed weights, |w| <= 15")->required();
  s_mac->add_option("--noise", mac.noise, "none | analog | digital");
  s_mac->add_flag("--trace", mac.trace, "per-product bitline and accumulator detail");

  MonteCarloArgs mc;
  auto* s_mc = app.add_subcommand("montecarlo", "ADC code histogram under analog noise");
  s_mc->add_option("--vin", mc.vin, "comma-separated signed inputs")->required();
  s_mc->add_option("--w", mc.w, "comma-separated signed weights")->required();
  s_mc->add_option("--trials", mc.trials, "number of noisy repetitions");
  s_mc->add_option("--sigma-analog", mc.sigma, "product-voltage sigma in mV");

  InferArgs inf;
  auto* s_inf = app.add_subcommand("infer", "accuracy band of a quantized network");
  s_inf->add_option("--net", inf.net, "network spec JSON")->required();
  s_inf->add_option("--weights", inf.weights, "weight file")->required();
  s_inf->add_option("--data", inf.data, "dataset directory")->required();
  s_inf->add_option("--dataset", inf.dataset, "mnist-idx | cifar10-binary");
  s_inf->add_option("--trials", inf.trials, "error-map resamplings");
  s_inf->add_option("--noise", inf.noise, "none | analog | digital");
  s_inf->add_option("--path", inf.path, "oracle | engine");
  s_inf->add_option("--limit", inf.limit, "use only the first N images");
  s_inf->add_option("--weight-bits", inf.weight_bits, "weight width including sign");
  s_inf->add_option("--activation-bits", inf.activation_bits, "activation width including sign");
  s_inf->add_flag("--baselines", inf.baselines, "also report float and noise-free accuracy");

  PerfArgs pf;
  auto* s_pf = app.add_subcommand("perf", "analytical energy / delay comparison");
  s_pf->add_option("--net", pf.net, "network spec JSON");
  s_pf->add_option("--b-io", pf.b_io, "bits fetched per bank access");
  s_pf->add_option("--sweep-bio", pf.sweep, "lo:hi:step");
  s_pf->add_flag("--area", pf.area, "array area breakdown");
  s_pf->add_flag("--ceil", pf.ceil, "round occupancy terms up to whole accesses");

  ParamsArgs pa;
  auto* s_pa = app.add_subcommand("params", "inspect the effective configuration");
  s_pa->add_flag("--dump-config", pa.dump, "print the configuration as JSON");
  s_pa->add_flag("--adc-table", pa.adc_table, "print the ADC code table");
  s_pa->add_flag("--check", pa.check, "evaluate the accumulator constraints");

  FixtureArgs fx;
  auto* s_fx = app.add_subcommand("fixture", "generate synthetic test fixtures");
  s_fx->require_subcommand(1);
  auto* s_fx_cifar = s_fx->add_subcommand("cifar", "synthetic CIFAR-10 binary batch");
  s_fx_cifar->add_option("--dir", fx.out, "output directory")->required();
  s_fx_cifar->add_option("--count", fx.count, "number of records");
  auto* s_fx_w = s_fx->add_subcommand("weights", "seeded random weights for a network spec");
  s_fx_w->add_option("--net", fx.net, "network spec JSON")->required();
  s_fx_w->add_option("--file", fx.out, "output weight file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*s_mac) return cmd_mac(common, mac, out);
    if (*s_mc) return cmd_montecarlo(common, mc, out);
    if (*s_inf) return cmd_infer(common, inf, out);
    if (*s_pf) return cmd_perf(common, pf, out);
    if (*s_pa) return cmd_params(common, pa, out);
    if (*s_fx_cifar) return cmd_fixture_cifar(common, fx, out);
    if (*s_fx_w) return cmd_fixture_weights(common, fx, out);
  } catch (const ConstraintError& e) {
    err << "constraint violation: " << e.what() << "\n";
    return kConstraint;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace imac::cli
