// Copyright 2026 The qspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qspec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix handed in as Hermitian is not Hermitian within tolerance.
class HermiticityError : public Error {
 public:
  using Error::Error;
};

/// Matrix handed in as unitary is not unitary within tolerance.
class UnitarityError : public Error {
 public:
  using Error::Error;
};

/// Argument outside its documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Operand sizes or qubit ranges do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A state that must be normalized is not.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// A state or operator that must be normalized has (near) zero norm.
class ZeroNormError : public Error {
 public:
  using Error::Error;
};

/// Requested system exceeds the dense-simulation qubit cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Preparation angle phi = 0 leaves the accepted branch empty.
class DegenerateAngleError : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration; message carries the JSON field path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Circuit-mode preparation failed on every allowed attempt.
class PrepExhaustedError : public Error {
 public:
  PrepExhaustedError(const std::string& what, std::uint64_t attempts, double observed_rate)
      : Error(what), attempts_(attempts), observed_rate_(observed_rate) {}

  std::uint64_t attempts() const { return attempts_; }
  double observed_rate() const { return observed_rate_; }

 private:
  std::uint64_t attempts_;
  double observed_rate_;
};

}  // namespace qspec
