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
#include <ostream>

#include "imac/device.hpp"
#include "imac/errors.hpp"

using namespace imac;

namespace {

// Independent per-bitline model: bit i (0 = LSB) discharges by its
// full-scale drop times the normalised wordline rate; the node is the mean.
double oracle_raw_share(int vin, int w) {
  const double endpoints_lsb_first[4] = {1093.75, 987.5, 775.0, 350.0};
  const double rate = vin / 15.0;
  double sum = 0.0;
  for (int bit = 0; bit < 4; ++bit) {
    const bool on = ((w >> bit) & 1) != 0;
    sum += on ? 1200.0 - (1200.0 - endpoints_lsb_first[bit]) * rate : 1200.0;
  }
  return sum / 4.0;
}

}  // namespace

TEST_CASE("dac_map examples") {
  const DeviceParams p;
  CHECK(dac_map(0, p).amplitude_mv == doctest::Approx(300.0));
  CHECK(dac_map(15, p).amplitude_mv == doctest::Approx(1000.0));
  CHECK(dac_map(6, p).amplitude_mv == doctest::Approx(580.0));
  CHECK(dac_map(6, p).duration_tau == 8.0);
  CHECK_THROWS_AS((void)dac_map(16, p), InputDomainError);
  CHECK_THROWS_AS((void)dac_map(-1, p), InputDomainError);
}

TEST_CASE("discharge_rate examples") {
  const DeviceParams p;
  CHECK(discharge_rate(300.0, p) == 0.0);
  CHECK(discharge_rate(1000.0, p) == doctest::Approx(1.0));
  CHECK(discharge_rate(650.0, p) == doctest::Approx(0.5));
}

TEST_CASE("ideal_product_voltage examples") {
  const DeviceParams p;
  CHECK(ideal_product_voltage(0, 9, p).mv == 1200.0);
  CHECK(ideal_product_voltage(15, 15, p).mv == doctest::Approx(750.0));
  CHECK(ideal_product_voltage(5, 10, p).mv == doctest::Approx(1100.0));
}

TEST_CASE("ideal model is exactly linear in vin*w over all pairs") {
  const DeviceParams p;
  for (int v = 0; v <= 15; ++v) {
    for (int w = 0; w <= 15; ++w) {
      CHECK(p.v_dd - ideal_product_voltage(v, w, p).mv == 2.0 * v * w);
    }
  }
}

TEST_CASE("staggered discharge matches the per-bitline oracle and the ideal model") {
  const DeviceParams p;
  const double gain = 450.0 / (1200.0 - 801.5625);
  for (int v = 0; v <= 15; ++v) {
    for (int w = 0; w <= 15; ++w) {
      const auto t = staggered_discharge(v, std::bitset<4>(static_cast<unsigned>(w)), p);
      CHECK(t.raw_share_mv == doctest::Approx(oracle_raw_share(v, w)).epsilon(1e-12));
      CHECK(std::fabs(1200.0 - (1200.0 - t.raw_share_mv) * gain - t.product.mv) < 1e-9);
      CHECK(std::fabs(t.product.mv - ideal_product_voltage(v, w, p).mv) < 1e-9);
    }
  }
}

TEST_CASE("staggered discharge examples") {
  const DeviceParams p;
  const auto full = staggered_discharge(15, 0b1111, p);
  CHECK(full.raw_share_mv == doctest::Approx(801.5625));
  CHECK(full.product.mv == doctest::Approx(750.0));
  for (int v = 0; v <= 15; ++v) CHECK(staggered_discharge_product(v, 0, p).mv == 1200.0);
  const auto msb = staggered_discharge(15, 0b1000, p);
  CHECK(msb.raw_share_mv == doctest::Approx((350.0 + 3 * 1200.0) / 4.0));
}

TEST_CASE("one-hot full-scale discharges stand in ratio 8:4:2:1") {
  const DeviceParams p;
  double drop[4];
  for (int bit = 0; bit < 4; ++bit) {
    const auto t = staggered_discharge(15, std::bitset<4>(1u << bit), p);
    drop[bit] = p.v_dd - t.blb_mv[static_cast<std::size_t>(bit)];
  }
  CHECK(drop[3] == doctest::Approx(8 * drop[0]));
  CHECK(drop[2] == doctest::Approx(4 * drop[0]));
  CHECK(drop[1] == doctest::Approx(2 * drop[0]));
}

TEST_CASE("release times follow the 0/4/6/7 tau staircase") {
  const auto t = staggered_discharge(15, 0b1111, DeviceParams{});
  CHECK(t.release_tau[3] == doctest::Approx(0.0));
  CHECK(t.release_tau[2] == doctest::Approx(4.0));
  CHECK(t.release_tau[1] == doctest::Approx(6.0));
  CHECK(t.release_tau[0] == doctest::Approx(7.0));
}

TEST_CASE("product voltage is strictly monotone in each operand") {
  const DeviceParams p;
  for (int w = 1; w <= 15; ++w) {
    for (int v = 1; v <= 15; ++v) {
      const auto bw = std::bitset<4>(static_cast<unsigned>(w));
      CHECK(staggered_discharge_product(v, bw, p).mv < staggered_discharge_product(v - 1, bw, p).mv);
      CHECK(staggered_discharge_product(w, std::bitset<4>(static_cast<unsigned>(v)), p).mv <
            staggered_discharge_product(w, std::bitset<4>(static_cast<unsigned>(v - 1)), p).mv);
    }
  }
}

TEST_CASE("SignedWord domain and sign algebra") {
  CHECK(SignedWord(-7).magnitude() == 7);
  CHECK(SignedWord(-7).sign() == Sign::Negative);
  CHECK(SignedWord(Sign::Negative, 0) == SignedWord(0));
  CHECK(SignedWord(5).negated().value() == -5);
  CHECK(SignedWord(13).magnitude_bits() == std::bitset<4>(0b1101));
  CHECK_THROWS_AS(SignedWord(16), InputDomainError);
  CHECK_THROWS_AS(SignedWord(Sign::Positive, -1), InputDomainError);
  CHECK(Sign::Negative * Sign::Negative == Sign::Positive);
  CHECK(Sign::Negative * Sign::Positive == Sign::Negative);
}

TEST_CASE("DeviceParams validation") {
  DeviceParams p;
  CHECK_NOTHROW(p.validate());
  p.blb_targets = {350, 987.5, 775, 1093.75};
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.c_sample = 50.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.v_blb_floor = 1300.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}
