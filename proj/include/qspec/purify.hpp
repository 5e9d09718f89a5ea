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
 * Purified states on the doubled space copy_a (x) copy_b.
 *
 * A doubled state on 2N qubits is handled as a 2^N x 2^N amplitude matrix
 * A(i, j) = <i|<j|psi>. In that picture (O (x) 1)|psi> is O A, the entangled
 * pair state is 1 / sqrt(2^N) and the Gibbs purification is
 * exp(-beta H / 2) / sqrt(Z).
 */

#pragma once

#include <string>
#include <string_view>

#include "qspec/simcore.hpp"

namespace qspec {

struct EnsembleSpec {
  enum class Kind { infinite_temperature, ground_state, gibbs };

  Kind kind = Kind::infinite_temperature;
  /// Inverse temperature; only read for Kind::gibbs.
  double beta = 0.0;

  static EnsembleSpec infinite_temperature() { return {}; }
  static EnsembleSpec ground_state() { return {Kind::ground_state, 0.0}; }
  static EnsembleSpec gibbs(double beta) { return {Kind::gibbs, beta}; }

  /// Throws DimensionError for a negative or non-finite beta.
  void validate() const;
  std::string name() const;
  static Kind parse_kind(std::string_view name);
};

/// Amplitude-matrix view of a doubled state with equal halves.
ComplexMatrix pair_matrix(const StateVector& doubled);
StateVector from_pair_matrix(const ComplexMatrix& amplitudes);

/// 2^{-N/2} sum_z |z>|z>.
StateVector entangled_pair_state(std::size_t num_sites);

/// Normalized (O (x) 1)|psi_EP>; for a real eigenbasis this is
/// sum_i O_i |i>|i> / sqrt(Tr O^2). Throws ZeroNormError when Tr O^2 <= 1e-24.
StateVector purify_operator(const HermitianOperator& op);

/// Z^{-1/2} sum_n e^{-beta eps_n / 2} |E_n>|E_n*>, with energies shifted by the
/// ground-state energy before exponentiation. The copy carries the complex
/// conjugate eigenvector so beta = 0 gives |psi_EP> for any H; for real H it
/// is the plain |E_n>|E_n> sum.
StateVector purify_gibbs(const HermitianOperator& hamiltonian, double beta);
StateVector purify_gibbs(const EigenDecomposition& hamiltonian, double beta);

struct GroundState {
  StateVector state;
  double energy = 0.0;
  /// Number of eigenvalues within 1e-9 (relative) of the lowest one.
  std::size_t degeneracy = 1;
};

/// Lowest-index eigenvector of H; degenerate levels are counted, not resolved.
GroundState find_ground_state(const EigenDecomposition& hamiltonian);

/// Doubled base state of an ensemble: |psi_EP>, |psi_0>|psi_0> or |psi_beta>.
StateVector ensemble_base_state(const EigenDecomposition& hamiltonian, const EnsembleSpec& ensemble);

/// Normalized (O (x) 1)|psi_base>. Throws ZeroNormError when O annihilates
/// the base state (norm <= 1e-12).
StateVector thermal_operator_state(const HermitianOperator& op, const HermitianOperator& hamiltonian,
                                   const EnsembleSpec& ensemble);
StateVector thermal_operator_state(const HermitianOperator& op, const EigenDecomposition& hamiltonian,
                                   const EnsembleSpec& ensemble);

/// (O (x) 1)|base> without normalization.
StateVector apply_on_first_copy(const HermitianOperator& op, const StateVector& base);

}  // namespace qspec
