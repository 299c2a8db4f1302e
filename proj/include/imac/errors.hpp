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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace imac {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand outside its representable range (e.g. a magnitude above 15).
class InputDomainError : public Error {
 public:
  using Error::Error;
};

// Violation of the accumulator design constraints (sample below the M9
// threshold, or an accumulation node above it).
class ConstraintError : public Error {
 public:
  using Error::Error;
};

// More accumulations than one ADC window holds.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Weight matrix does not fit the array.
class PlacementError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed binary input. Carries the file and the byte offset at which the
// problem was detected.
class FormatError : public Error {
 public:
  FormatError(std::string file, std::uint64_t offset, const std::string& what)
      : Error(file + " @" + std::to_string(offset) + ": " + what),
        file_(std::move(file)),
        offset_(offset) {}

  [[nodiscard]] const std::string& file() const noexcept { return file_; }
  [[nodiscard]] std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::string file_;
  std::uint64_t offset_;
};

}  // namespace imac
