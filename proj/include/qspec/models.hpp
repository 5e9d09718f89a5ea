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

/**
 * @file
 * Spin-1/2 chain models as Pauli sums, compiled to dense Hermitian matrices,
 * plus synthetic diagonal observables with prescribed eigenvalue laws.
 *
 * Site s of an N-site chain is qubit s, i.e. bit N-1-s of the basis index.
 * Chain presets use open boundary conditions.
 */

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qspec/simcore.hpp"

namespace qspec {

/// Largest chain that still fits two copies plus a phase register.
inline constexpr std::size_t kMaxSystemSites = 11;

/// coefficient * factors[0] (x) factors[1] (x) ... with factors from "IXYZ".
struct PauliTerm {
  double coefficient = 1.0;
  std::string factors;
};

struct ModelSpec {
  std::size_t num_sites = 0;
  std::vector<PauliTerm> terms;
  std::string name;

  /// Throws DimensionError on malformed terms.
  void validate() const;
};

/// Dense matrix of a Pauli sum. Throws CapacityError above kMaxSystemSites.
HermitianOperator build_operator(const ModelSpec& spec);

/// sum_i sigma^z_i; diagonal entry for bitstring b is N - 2 popcount(b).
HermitianOperator total_magnetization(std::size_t num_sites);

// Presets -------------------------------------------------------------------

/// J sum Z_i Z_{i+1} + g sum X_i + h sum Z_i. The default longitudinal field
/// breaks integrability.
ModelSpec tilted_ising_chain(std::size_t num_sites, double coupling = 1.0, double transverse = 1.05,
                             double longitudinal = 0.5);

/// J sum (X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1}).
ModelSpec heisenberg_chain(std::size_t num_sites, double coupling = 1.0);

ModelSpec total_z_observable(std::size_t num_sites);
ModelSpec single_site_z_observable(std::size_t num_sites, std::size_t site);
/// sum_i (-1)^i Z_i.
ModelSpec staggered_z_observable(std::size_t num_sites);

/// Names accepted by preset_model.
std::vector<std::string> preset_names();

/// Builds a named preset. Recognized parameters: "J", "g", "h" for the
/// Hamiltonians and "site" for single_z. Throws Error for unknown names or
/// parameters.
ModelSpec preset_model(std::string_view name, std::size_t num_sites,
                       const std::map<std::string, double>& params = {});

// Synthetic observables -----------------------------------------------------

struct EigenvalueDistribution {
  enum class Kind { semicircle, uniform, arcsine, gaussian };

  Kind kind = Kind::gaussian;
  /// Radius R, half-width a, amplitude a or standard deviation sigma.
  double parameter = 1.0;

  void validate() const;
  double sample(std::mt19937_64& rng) const;
  /// Analytic <x^2> and <x^4> of the law (all four laws are symmetric).
  double second_moment() const;
  double fourth_moment() const;

  std::string name() const;
  /// Parses "semicircle", "uniform", "arcsine" or "gaussian".
  static Kind parse_kind(std::string_view name);
};

/// Diagonal operator with 2^N i.i.d. draws from `dist`, sample mean removed so
/// the result is traceless. Same seed, same matrix.
HermitianOperator synthetic_diagonal_observable(const EigenvalueDistribution& dist,
                                                std::size_t num_sites, std::uint64_t seed);

}  // namespace qspec
