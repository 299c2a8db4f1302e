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

#include <cmath>

#include "../support/generators.hpp"
#include "imac/errors.hpp"
#include "imac/perf.hpp"

using namespace imac;
using namespace imac::perf;
using imac::testing::for_all;
using imac::testing::Gen;

namespace {

// Plain-double transcription of the delay and energy expressions, kept free
// of the unit types and helpers used by the library.
struct Ref {
  double t_vn, e_vn, t_im, e_im;
};

Ref reference(double m, double n, double k, double nmov, double bio) {
  const double bw = 5, nbank = 4, ncol = 256, nmult = 175;
  const double tread = 4, tmult = 4, tamac = 1, tadc = 5;
  const double eread = 5.2, emult = 0.9, eamac = 0.254, eadc = 0.253;
  const double pleak = 2.4, r = 10;
  const double w = m * n * k * k;
  Ref out{};
  out.t_vn = tread * w / (bio / bw * nbank) + tmult * w / nmult * nmov * nmov;
  out.e_vn = eread * w + emult * w * nmov * nmov + pleak * out.t_vn * 1e-6;
  out.t_im = (tamac + tadc / r) * w / (ncol / bw * nbank) * nmov * nmov;
  out.e_im = (eamac + eadc / r) * w * nmov * nmov + pleak * out.t_im * 1e-6;
  return out;
}

std::vector<LayerSpec> lenet() {
  return {LayerSpec::conv("conv1", 1, 6, 5, 32), LayerSpec::conv("conv2", 6, 16, 5, 14),
          LayerSpec::fc("fc1", 400, 120), LayerSpec::fc("fc2", 120, 84),
          LayerSpec::fc("fc3", 84, 10)};
}

bool rel_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

TEST_CASE("layer model matches an independent transcription") {
  for_all(301, 500, [](Gen& g, int) {
    const long m = g.integer(1, 512), n = g.integer(1, 512), k = g.integer(1, 7);
    const long l = g.integer(static_cast<int>(k), 64);
    const double bio = std::pow(2.0, g.integer(2, 10));
    const auto layer = LayerSpec::conv("x", m, n, k, l);
    PerfParams p;
    p.b_io = bio;
    const auto rep = evaluate_layer(layer, p);
    const auto ref = reference(static_cast<double>(m), static_cast<double>(n),
                               static_cast<double>(k), static_cast<double>(layer.n_mov), bio);
    CHECK(rel_close(rep.t_vn.value(), ref.t_vn, 1e-12));
    CHECK(rel_close(rep.e_vn.value(), ref.e_vn, 1e-12));
    CHECK(rel_close(rep.t_imac.value(), ref.t_im, 1e-12));
    CHECK(rel_close(rep.e_imac.value(), ref.e_im, 1e-12));
  });
}

TEST_CASE("single-MAC layer") {
  const auto one = LayerSpec::fc("one", 1, 1);
  const PerfParams p;
  const auto rep = evaluate_layer(one, p);
  // One in-memory MAC plus a tenth of a conversion.
  CHECK(rep.e_imac.value() == doctest::Approx(0.254 + 0.0253).epsilon(1e-6));
  CHECK(rep.t_imac.value() == doctest::Approx(1.5 / 204.8));
  CHECK(rep.t_vn.value() == doctest::Approx(4.0 / 12.8 + 4.0 / 175.0));
}

TEST_CASE("doubling B_IO halves the fetch term") {
  const auto layer = LayerSpec::conv("c", 16, 32, 3, 16);
  PerfParams a, b;
  b.b_io = 2 * a.b_io;
  const double w = layer.weight_count();
  const double mult = 4.0 * w / 175.0 * static_cast<double>(layer.n_mov * layer.n_mov);
  const double fetch_a = vn_delay(layer, a).value() - mult;
  const double fetch_b = vn_delay(layer, b).value() - mult;
  CHECK(fetch_b == doctest::Approx(fetch_a / 2.0));
}

TEST_CASE("per-MAC in-memory energy approaches E_AMAC as R grows") {
  const auto layer = LayerSpec::conv("c", 8, 8, 3, 10);
  PerfParams p;
  const double macs = layer.mac_count();
  const double at10 = imac_energy(layer, p, Nanoseconds{0.0}).value() / macs;
  CHECK(at10 == doctest::Approx(0.2793));
  p.r = 1e9;
  CHECK(imac_energy(layer, p, Nanoseconds{0.0}).value() / macs == doctest::Approx(0.254));
}

TEST_CASE("EDP ratio equals energy ratio times delay ratio") {
  for_all(302, 200, [](Gen& g, int) {
    const auto layer = LayerSpec::fc("f", g.integer(1, 4096), g.integer(1, 4096));
    PerfParams p;
    p.b_io = g.real(1.0, 1024.0);
    const auto rep = evaluate_layer(layer, p);
    CHECK(rep.edp_ratio() == doctest::Approx(rep.energy_ratio() * rep.delay_ratio()));
  });
}

TEST_CASE("leakage is a negligible share of LeNet energy") {
  PerfParams p;
  const auto with = compare_network(lenet(), p);
  p.p_leak = Nanowatts{1e-300};
  const auto without = compare_network(lenet(), p);
  CHECK((with.total.e_imac - without.total.e_imac) / with.total.e_imac < 1e-4);
  CHECK((with.total.e_vn - without.total.e_vn) / with.total.e_vn < 1e-4);
}

TEST_CASE("network totals are sums of layers") {
  const auto rep = compare_network(lenet(), PerfParams{});
  REQUIRE(rep.layers.size() == 5);
  double e = 0.0, t = 0.0;
  for (const auto& l : rep.layers) {
    e += l.e_imac.value();
    t += l.t_vn.value();
  }
  CHECK(rep.total.e_imac.value() == doctest::Approx(e));
  CHECK(rep.total.t_vn.value() == doctest::Approx(t));
  CHECK(per_inference_energy(lenet(), PerfParams{}).value() ==
        doctest::Approx(rep.total.e_imac.value() * 1e-3));
  CHECK(per_inference_energy({}, PerfParams{}).value() == 0.0);
}

TEST_CASE("EDP ratio falls monotonically as B_IO grows") {
  const auto pts = sweep_bio(lenet(), PerfParams{}, {4, 8, 16, 32, 64, 128, 256, 512});
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].edp_ratio < pts[i - 1].edp_ratio);
    CHECK(pts[i].energy_ratio <= pts[i - 1].energy_ratio);
  }
  CHECK_THROWS_AS((void)sweep_bio(lenet(), PerfParams{}, {}), ConfigError);
}

TEST_CASE("ceil occupancy never lowers delay") {
  PerfParams floor_p, ceil_p;
  ceil_p.ceil_occupancy = true;
  for (const auto& l : lenet()) {
    CHECK(vn_delay(l, ceil_p) >= vn_delay(l, floor_p));
    CHECK(imac_delay(l, ceil_p) >= imac_delay(l, floor_p));
  }
}

TEST_CASE("parameter validation") {
  PerfParams p;
  CHECK_NOTHROW(p.validate());
  p.n_mult = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.p_leak = Nanowatts{0.0};
  CHECK_THROWS_AS(p.validate(), ConfigError);
  CHECK_THROWS_AS((void)evaluate_layer(LayerSpec{"bad", 1, 1, 1, 3, 4}, PerfParams{}), ConfigError);
}

TEST_CASE("area table") {
  const auto a = AreaTable::defaults();
  CHECK(a.total() == doctest::Approx(205800.0));
  CHECK(a.compute_periphery_fraction() == doctest::Approx(73900.0 / 205800.0));
  CHECK(a.compute_periphery_fraction() == doctest::Approx(0.36).epsilon(0.01));
  CHECK(a.non_cell_fraction() == doctest::Approx(122700.0 / 205800.0));
  CHECK(AreaTable{}.total() == 0.0);
  CHECK(AreaTable{}.compute_periphery_fraction() == 0.0);
}
