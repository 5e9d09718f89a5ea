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
#include <random>
#include <span>
#include <vector>

namespace qspec {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for sub-stream `stream`, draw `index`, of a master seed:
///   s = splitmix64(master + (stream + 1) * 0x9E3779B97F4A7C15)
///   derive_seed = splitmix64(s + (index + 1) * 0x9E3779B97F4A7C15)
/// Streams are counters, so splitting work across them never changes results.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0);

/// Multinomial counts for `trials` draws over `probabilities` (need not be
/// normalized), by successive conditional binomials.
std::vector<std::uint64_t> multinomial_counts(std::uint64_t trials, std::span<const double> probabilities,
                                              std::mt19937_64& rng);

}  // namespace qspec
