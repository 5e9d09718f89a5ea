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
 * Exact-diagonalization references for the spectroscopy pipeline.
 *
 * Index convention for transition weights: (n, m) with m the initial
 * eigenstate (populated by the ensemble) and n the final one. A transition
 * contributes at frequency eps_n - eps_m both in the spectral function and in
 * the phase-estimation outcome.
 */

#pragma once

#include <span>
#include <vector>

#include "qspec/purify.hpp"
#include "qspec/qpe.hpp"
#include "qspec/simcore.hpp"

namespace qspec {

struct SpectrumTable {
  std::vector<double> frequencies;
  std::vector<double> values;
  double gamma = 0.0;
  EnsembleSpec ensemble;
};

struct GoldenRuleWeights {
  /// p_m |<E_n|O|E_m>|^2 / <O^2>.
  RealMatrix weights;
  /// |c_nm|^2 of the purified state (O (x) 1)|base>, expanded in
  /// |E_n> (x) |E_m*>. Equal to `weights` for real-symmetric H and O.
  RealMatrix operational;
  RealVector energies;
  /// True when the two forms disagree by more than 1e-10 somewhere.
  bool differs = false;
};

struct SpectralLine {
  double omega = 0.0;
  double weight = 0.0;
};

enum class DistanceMetric { total_variation, max_abs };

/// Ensemble populations p_n over the eigenbasis. The ground state is the
/// lowest eigenvector (index 0); degenerate partners get no weight.
RealVector ensemble_populations(const EigenDecomposition& hamiltonian, const EnsembleSpec& ensemble);

/// S(t) = sum_{n,m} p_n e^{i(eps_n - eps_m)t} |<E_n|O|E_m>|^2.
Complex correlation_function(const HermitianOperator& hamiltonian, const HermitianOperator& op, double t,
                             const EnsembleSpec& ensemble = {});
Complex correlation_function(const EigenDecomposition& hamiltonian, const HermitianOperator& op, double t,
                             const EnsembleSpec& ensemble = {});

/// Closed-form Re int_0^inf e^{i omega t - gamma t} S(t) dt. Not normalized:
/// the total Lorentzian weight is <O^2>.
SpectrumTable spectral_function(const HermitianOperator& hamiltonian, const HermitianOperator& op,
                                std::span<const double> omega_grid, double gamma,
                                const EnsembleSpec& ensemble = {});
SpectrumTable spectral_function(const EigenDecomposition& hamiltonian, const HermitianOperator& op,
                                std::span<const double> omega_grid, double gamma,
                                const EnsembleSpec& ensemble = {});

GoldenRuleWeights golden_rule_weights(const HermitianOperator& hamiltonian, const HermitianOperator& op,
                                      const EnsembleSpec& ensemble = {});
GoldenRuleWeights golden_rule_weights(const EigenDecomposition& hamiltonian, const HermitianOperator& op,
                                      const EnsembleSpec& ensemble = {});

/// Transitions grouped by frequency eps_n - eps_m (within `merge_tolerance`),
/// sorted by frequency.
std::vector<SpectralLine> spectral_lines(const RealMatrix& weights, const RealVector& energies,
                                         double merge_tolerance = 1e-9);

/// |A|^2 = 4^{-l} sin^2(pi d) / sin^2(pi d / 2^l), d = Delta 2^l E / 2 pi - f.
double qpe_kernel(double delta_energy, std::uint64_t f, std::size_t l, double delta);

/// Same kernel as a function of the offset d alone.
double fejer_kernel(double offset, std::size_t l);

/// P(f) = sum_{n,m} |c_nm|^2 |A^f_nm|^2 using the operational weights.
PhaseDistribution exact_outcome_distribution(const HermitianOperator& hamiltonian, const HermitianOperator& op,
                                             std::size_t l, double delta, const EnsembleSpec& ensemble = {});
PhaseDistribution exact_outcome_distribution(const EigenDecomposition& hamiltonian, const HermitianOperator& op,
                                             std::size_t l, double delta, const EnsembleSpec& ensemble = {});

double distribution_distance(std::span<const double> p, std::span<const double> q, DistanceMetric metric);

}  // namespace qspec
