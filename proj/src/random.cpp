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

#include "qspec/random.hpp"

#include <algorithm>
#include <cmath>

#include "qspec/errors.hpp"

namespace qspec {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t s = splitmix64(master + (stream + 1) * kGolden);
  return splitmix64(s + (index + 1) * kGolden);
}

std::vector<std::uint64_t> multinomial_counts(std::uint64_t trials, std::span<const double> probabilities,
                                              std::mt19937_64& rng) {
  double remaining_mass = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ArgumentError("multinomial needs finite non-negative probabilities");
    remaining_mass += p;
  }
  if (!(remaining_mass > 0.0)) throw ArgumentError("multinomial needs at least one positive probability");

  std::size_t last = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] > 0.0) last = i;
  }

  std::vector<std::uint64_t> counts(probabilities.size(), 0);
  std::uint64_t remaining = trials;
  for (std::size_t i = 0; i <= last && remaining > 0; ++i) {
    const double p = probabilities[i];
    if (i == last) {
      counts[i] = remaining;
      break;
    }
    if (p > 0.0) {
      const double q = std::clamp(p / remaining_mass, 0.0, 1.0);
      std::binomial_distribution<std::int64_t> binomial(static_cast<std::int64_t>(remaining), q);
      counts[i] = static_cast<std::uint64_t>(binomial(rng));
      remaining -= counts[i];
      remaining_mass -= p;
    }
  }
  return counts;
}

}  // namespace qspec
