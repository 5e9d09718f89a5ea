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
 * Phase estimation with counter-propagating copies.
 *
 * Layout: copy_a = [0, N), copy_b = [N, 2N), phase register = [2N, 2N + l).
 * Phase bit j (bit 0 least significant in the outcome f, i.e. the last qubit)
 * controls (e^{i H Delta} (x) e^{-i H Delta})^{2^j}: copy_a runs forward with
 * +H, copy_b with -H. After the inverse QFT an energy difference
 * eps_n - eps_m > 0 between the copies lands near
 * f = Delta 2^l (eps_n - eps_m) / 2 pi, and negative differences wrap into
 * the upper half of the register.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "qspec/simcore.hpp"

namespace qspec {

struct PhaseDistribution {
  enum class Kind { exact, empirical };

  std::size_t l = 0;
  double delta = 0.0;
  std::vector<double> probabilities;
  Kind kind = Kind::exact;
  /// Empirical only.
  std::uint64_t shots = 0;
  std::vector<std::uint64_t> counts;

  std::size_t size() const { return probabilities.size(); }
  /// Angular frequency of outcome f (see outcome_frequency).
  double frequency(std::uint64_t f) const;
};

/// Phase-register size and coupling time chosen from a bandwidth and a linewidth.
struct ResolutionPlan {
  std::size_t l = 0;
  double delta = 0.0;
  double omega_max = 0.0;
  double gamma = 0.0;

  /// 1/gamma <= Delta 2^l / 2 pi <= (2^l - 1) / omega_max, each up to a
  /// relative rounding slack of 1e-12.
  bool satisfies_bounds() const;
};

/// Final state |Psi_QFT> of the phase estimation circuit on 2N + l qubits.
StateVector qpe_final_state(const StateVector& prepared, const EigenDecomposition& hamiltonian,
                            std::size_t l, double delta);

/// Exact outcome distribution of the phase register. Throws CapacityError when
/// 2N + l exceeds kMaxQubits and ArgumentError for delta <= 0 or l = 0.
PhaseDistribution run_qpe(const StateVector& prepared, const HermitianOperator& hamiltonian,
                          std::size_t l, double delta);
PhaseDistribution run_qpe(const StateVector& prepared, const EigenDecomposition& hamiltonian,
                          std::size_t l, double delta);

/// Multinomial draw of `shots` outcomes from an exact distribution; counts are
/// normalized into `probabilities`. Deterministic per seed.
PhaseDistribution sample_outcomes(const PhaseDistribution& dist, std::uint64_t shots, std::uint64_t seed);

/// omega = 2 pi f' / (Delta 2^l) with f' = f for f < 2^{l-1}, f - 2^l otherwise.
double outcome_frequency(std::uint64_t f, std::size_t l, double delta);

/// Real-valued register position Delta 2^l omega / 2 pi, wrapped into [0, 2^l).
double frequency_to_outcome(double omega, std::size_t l, double delta);

/// Smallest l with 2^l >= 1 + omega_max / gamma, then Delta = 2 pi / (gamma 2^l).
/// Throws ArgumentError unless omega_max > 0 and 0 < gamma < omega_max.
ResolutionPlan plan_resolution(double omega_max, double gamma);

}  // namespace qspec
