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
#include <numeric>

#include "../support/generators.hpp"
#include "imac/errors.hpp"
#include "imac/peripherals.hpp"

using namespace imac;
using imac::testing::for_all;
using imac::testing::Gen;

namespace {

AnalogSample at(double mv) { return {mv, Stage::SampleNode}; }

// Independent quantizer: scan the code boundaries from the top.
int oracle_code(double v, const AdcConfig& cfg) {
  const double w = (cfg.v_hi - cfg.v_lo) / (1 << cfg.bits);
  for (int c = (1 << cfg.bits) - 1; c > 0; --c) {
    if ((v - cfg.v_lo) / w >= c) return c;
  }
  return 0;
}

}  // namespace

TEST_CASE("accumulation step examples") {
  const DeviceParams p;
  CHECK(accumulation_step(1200.0, p) == doctest::Approx(37.5));
  CHECK(accumulation_step(600.0, p) == 0.0);
  CHECK(accumulation_step(750.0, p) == doctest::Approx(9.375));
}

TEST_CASE("accumulate routes by sign and counts") {
  const DeviceParams p;
  auto s = accumulate(AccumulatorState{}, at(1200.0), Sign::Positive, p);
  CHECK(s.v_pos_mv == doctest::Approx(37.5));
  CHECK(s.v_neg_mv == 0.0);
  s = accumulate(s, at(750.0), Sign::Negative, p);
  CHECK(s.v_neg_mv == doctest::Approx(9.375));
  CHECK(s.count == 2);
  CHECK(s.n_pos == 1);
  CHECK(s.n_neg == 1);
}

TEST_CASE("accumulate errors") {
  const DeviceParams p;
  CHECK_THROWS_AS((void)accumulate({}, at(599.0), Sign::Positive, p), ConstraintError);
  AccumulatorState s;
  for (int i = 0; i < p.n_acc; ++i) s = accumulate(s, at(1200.0), Sign::Positive, p);
  CHECK_THROWS_AS((void)accumulate(s, at(1200.0), Sign::Positive, p), CapacityError);
  CHECK_THROWS_AS((void)accumulate(close_window(AccumulatorState{}, p), at(1200.0), Sign::Positive, p),
                  CapacityError);
  DeviceParams small = p;
  small.c_acc = 20.0;
  AccumulatorState t;
  for (int i = 0; i < 8; ++i) t = accumulate(t, at(1200.0), Sign::Negative, small);
  CHECK_THROWS_AS((void)accumulate(t, at(1200.0), Sign::Negative, small), ConstraintError);
}

TEST_CASE("accumulator superposition is order independent") {
  const DeviceParams p;
  for_all(11, 200, [&](Gen& g, int) {
    std::vector<double> samples(static_cast<std::size_t>(g.integer(1, p.n_acc)));
    for (auto& v : samples) v = g.real(750.0, 1200.0);
    double expect = 0.0;
    for (double v : samples) expect += 2.5 * (v - 600.0) / 40.0;
    AccumulatorState fwd, rev;
    for (double v : samples) fwd = accumulate(fwd, at(v), Sign::Positive, p);
    std::reverse(samples.begin(), samples.end());
    for (double v : samples) rev = accumulate(rev, at(v), Sign::Positive, p);
    CHECK(std::fabs(fwd.v_pos_mv - expect) < 1e-9);
    CHECK(std::fabs(rev.v_pos_mv - expect) < 1e-9);
  });
}

TEST_CASE("close_window tops idle cycles up with zero-product samples") {
  const DeviceParams p;
  auto s = accumulate(AccumulatorState{}, at(750.0), Sign::Positive, p);
  s = close_window(s, p);
  CHECK(s.closed);
  CHECK(s.v_pos_mv == doctest::Approx(9.375 + 9 * 37.5));
  CHECK(s.v_neg_mv == doctest::Approx(10 * 37.5));
  CHECK(reset().v_pos_mv == 0.0);
  CHECK_FALSE(reset().closed);
}

TEST_CASE("constraint checker examples") {
  DeviceParams p;
  auto r = check_constraints(p);
  CHECK(r.ok());
  CHECK(r.sample_slack_mv == doctest::Approx(150.0));
  CHECK(r.headroom_slack_mv == doctest::Approx(225.0));
  CHECK(r.worst_case_v_acc_mv == doctest::Approx(375.0));
  CHECK(r.min_c_acc_ff == doctest::Approx(25.0));

  p.n_acc = 20;
  r = check_constraints(p);
  CHECK_FALSE(r.ok());
  CHECK(r.worst_case_v_acc_mv == doctest::Approx(750.0));

  p = {};
  p.c_acc = 25.0;
  r = check_constraints(p);
  CHECK(r.ok());
  CHECK(r.headroom_slack_mv == 0.0);
  p.c_acc = 24.999;
  CHECK_FALSE(check_constraints(p).ok());
}

TEST_CASE("sar_adc examples") {
  const AdcConfig full{4, 0.0, 375.0};
  CHECK(sar_adc(0.0, full) == 0);
  CHECK(sar_adc(375.0, full) == 15);
  CHECK(sar_adc(1e6, full) == 15);
  CHECK(sar_adc(-5.0, full) == 0);
  CHECK(sar_adc(187.5, full) == 8);
  const AdcConfig def;
  CHECK(sar_adc(def.v_lo, def) == 0);
  CHECK(sar_adc(def.v_hi, def) == 15);
}

TEST_CASE("SAR loop equals the closed form and an independent quantizer on 10^4 voltages") {
  for (const AdcConfig cfg : {AdcConfig{}, AdcConfig{4, 0.0, 375.0}, AdcConfig{6, -10.0, 90.0}}) {
    for_all(5, 10000, [&](Gen& g, int) {
      const double v = g.real(cfg.v_lo - 50.0, cfg.v_hi + 50.0);
      const int c = sar_adc(v, cfg);
      CHECK(c == quantize_closed_form(v, cfg));
      CHECK(c == oracle_code(v, cfg));
    });
  }
}

TEST_CASE("sar_adc is monotone") {
  const AdcConfig cfg;
  int prev = 0;
  for (double v = 50.0; v <= 400.0; v += 0.01) {
    const int c = sar_adc(v, cfg);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("matched ADC range and code table") {
  const DeviceParams p;
  const auto cfg = AdcConfig::matched_to(p);
  CHECK(cfg.v_lo == doctest::Approx(93.75));
  CHECK(cfg.v_hi == doctest::Approx(375.0));
  const auto table = adc_code_table(cfg);
  REQUIRE(table.size() == 16);
  CHECK(table.front().lo_mv == doctest::Approx(93.75));
  CHECK(table.back().hi_mv == doctest::Approx(375.0));
  CHECK(product_unit_mv(p) == doctest::Approx(0.125));
  CHECK(bin_width_products(cfg, p) == doctest::Approx(2250.0 / 16.0));
}

TEST_CASE("decode examples") {
  const DeviceParams p;
  const AdcConfig cfg;
  CHECK(decode_mac(15, 15, 0, 0, cfg, p) == 0);
  const int full = sar_adc(close_window(
      [&] {
        AccumulatorState s;
        for (int i = 0; i < 10; ++i) s = accumulate(s, at(750.0), Sign::Positive, p);
        return s;
      }(), p).v_pos_mv, cfg);
  CHECK(full == 0);
  CHECK(std::abs(decode_mac(full, 15, 10, 0, cfg, p) - 2250) <= 70.3125 + 1);
  CHECK_THROWS_AS((void)decode_mac(16, 0, 1, 1, cfg, p), InputDomainError);
  CHECK_THROWS_AS((void)decode_mac(0, -1, 1, 1, cfg, p), InputDomainError);
}

TEST_CASE("single-capacitor round trip is within one bin for every reachable sum") {
  const DeviceParams p;
  const AdcConfig cfg;
  const double bin = bin_width_products(cfg, p);
  for (int sum = 0; sum <= 2250; ++sum) {
    const double v = 10 * 37.5 - 0.125 * sum;
    const int code = sar_adc(v, cfg);
    CHECK(std::fabs(decode_capacitor(code, 10, cfg, p) - sum) <= bin);
  }
}

TEST_CASE("decoding is antisymmetric under swapping the capacitors") {
  const DeviceParams p;
  const AdcConfig cfg;
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      CHECK(decode_mac(a, b, 5, 5, cfg, p) == -decode_mac(b, a, 5, 5, cfg, p));
    }
  }
}
