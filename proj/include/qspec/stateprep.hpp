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
 * Postselected preparation of the operator state |O>: an ancilla in |+>
 * controls exp(i phi O) on the first copy of a base state, a second Hadamard
 * follows, and the |1> outcome leaves (1 - e^{i phi O})|base> behind.
 *
 * Every closed form here is an expectation in the base state. For the infinite
 * temperature ensemble the base is |psi_EP> and <f(O)> = Tr f(O) / 2^N.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qspec/models.hpp"
#include "qspec/simcore.hpp"

namespace qspec {

/// Eigenvalues of O and the base-state population of each eigenspace.
struct SpectralMeasure {
  RealVector values;
  RealVector weights;
};

SpectralMeasure spectral_measure(const HermitianOperator& op, const StateVector& base);
/// Infinite temperature: uniform weights 2^{-N}.
SpectralMeasure spectral_measure(const HermitianOperator& op);

/// <O>, <O^2>, <O^3>, <O^4> in the base state.
struct MomentSet {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
};

MomentSet moments(const SpectralMeasure& measure);

/// c = m2^2 / m4 of a symmetric eigenvalue law, the small-angle ratio P1 / (1 - F).
double moment_ratio_constant(const EigenvalueDistribution& dist);
/// Small-angle limit of P1 / (1 - F) for a finite spectrum: m2^2 / (m4 - m3^2 / m2).
double small_angle_ratio(const MomentSet& m);

/// P1(phi) = <sin^2(phi O / 2)>.
double acceptance_probability(const SpectralMeasure& measure, double phi);
double acceptance_probability(const HermitianOperator& op, double phi, const StateVector& base);
double acceptance_probability(const HermitianOperator& op, double phi);

/// |<O|psi_1>|^2 = |<O> - <O U>|^2 / (<O^2> <4 sin^2(phi O / 2)>). For a
/// traceless O the <O> term vanishes. Throws DegenerateAngleError when the
/// accepted branch is empty (phi = 0).
double preparation_fidelity(const SpectralMeasure& measure, double phi);
double preparation_fidelity(const HermitianOperator& op, double phi, const StateVector& base);
double preparation_fidelity(const HermitianOperator& op, double phi);

/// Exact result of simulating the preparation circuit, before any draw.
struct PrepBranches {
  StateVector accepted_state;  // normalized |psi_1> on copy_a (x) copy_b
  double acceptance_probability = 0.0;
  double rejection_probability = 0.0;
  double fidelity_with_target = 0.0;
};

/// Simulates H, controlled exp(i phi O) on copy_a, H on a fresh ancilla
/// appended after `base`.
PrepBranches simulate_prep_circuit(const HermitianOperator& op, double phi, const StateVector& base);

struct PrepOutcome {
  bool accepted = false;
  std::optional<StateVector> post_state;
  double acceptance_probability = 0.0;
  double fidelity_with_target = 0.0;
};

/// Bernoulli(p) outcome of the ancilla measurement for one seed.
bool draw_acceptance(double acceptance_probability, std::uint64_t seed);

/// Full preparation round: exact branches plus a seeded ancilla measurement.
/// The probability and fidelity fields do not depend on the draw.
PrepOutcome run_prep_circuit(const HermitianOperator& op, double phi, const StateVector& base,
                             std::uint64_t seed);

struct PhiChoice {
  double phi = 0.0;
  MomentSet moments;
  /// epsilon m2^2 / m4.
  double predicted_acceptance = 0.0;
  /// phi^2 m2 / 4 = epsilon m2^2 / (4 m4), the small-angle expansion of P1 at phi.
  double leading_order_acceptance = 0.0;
  /// epsilon m2 / O_max^2.
  double moment_bound = 0.0;
  /// epsilon rk(O) / 2^N (O_min / O_max)^2.
  double rank_bound = 0.0;
  double largest_singular_value = 0.0;
  double smallest_singular_value = 0.0;
  std::size_t rank = 0;
  std::vector<std::string> warnings;
};

/// phi = sqrt(epsilon m2 / m4), which keeps 1 - F near epsilon / 4 to leading
/// order. Throws ArgumentError unless 0 < epsilon < 1 and ZeroNormError when m4 = 0.
PhiChoice choose_phi(const HermitianOperator& op, double epsilon, const StateVector& base);
PhiChoice choose_phi(const HermitianOperator& op, double epsilon);

/// Warning text when |Tr O| / 2^N exceeds 1e-12.
std::optional<std::string> traceless_warning(const HermitianOperator& op);

}  // namespace qspec
