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

#include <compare>

namespace imac::units {

// A double tagged with its unit. Quantities of different units do not mix
// without an explicit conversion function.
template <class Tag>
class Quantity {
 public:
  constexpr Quantity() = default;
  constexpr explicit Quantity(double v) : v_(v) {}

  [[nodiscard]] constexpr double value() const { return v_; }

  constexpr Quantity& operator+=(Quantity o) {
    v_ += o.v_;
    return *this;
  }
  friend constexpr Quantity operator+(Quantity a, Quantity b) { return Quantity(a.v_ + b.v_); }
  friend constexpr Quantity operator-(Quantity a, Quantity b) { return Quantity(a.v_ - b.v_); }
  friend constexpr Quantity operator*(Quantity a, double s) { return Quantity(a.v_ * s); }
  friend constexpr Quantity operator*(double s, Quantity a) { return Quantity(a.v_ * s); }
  friend constexpr Quantity operator/(Quantity a, double s) { return Quantity(a.v_ / s); }
  // Ratio of two like quantities is dimensionless.
  friend constexpr double operator/(Quantity a, Quantity b) { return a.v_ / b.v_; }
  friend constexpr auto operator<=>(Quantity, Quantity) = default;

 private:
  double v_ = 0.0;
};

using Nanoseconds = Quantity<struct NanosecondTag>;
using Picojoules = Quantity<struct PicojouleTag>;
using Nanojoules = Quantity<struct NanojouleTag>;
using Nanowatts = Quantity<struct NanowattTag>;
using PicojouleNanoseconds = Quantity<struct EnergyDelayTag>;

[[nodiscard]] constexpr PicojouleNanoseconds operator*(Picojoules e, Nanoseconds t) {
  return PicojouleNanoseconds(e.value() * t.value());
}

// 1 nW x 1 ns = 1e-18 J = 1e-6 pJ.
[[nodiscard]] constexpr Picojoules energy(Nanowatts p, Nanoseconds t) {
  return Picojoules(p.value() * t.value() * 1e-6);
}

[[nodiscard]] constexpr Nanojoules to_nanojoules(Picojoules e) {
  return Nanojoules(e.value() * 1e-3);
}

}  // namespace imac::units
