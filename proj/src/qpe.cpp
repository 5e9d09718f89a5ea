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

#include "qspec/qpe.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "qspec/errors.hpp"
#include "qspec/random.hpp"

namespace qspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxPlanBits = 40;

void check_qpe_args(const StateVector& prepared, std::size_t system_qubits, std::size_t l, double delta) {
  if (l == 0) throw ArgumentError("phase register needs at least one bit");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ArgumentError("coupling time delta must be positive");
  if (prepared.num_qubits() != 2 * system_qubits) {
    throw DimensionError("prepared state must live on two copies of the system");
  }
  if (2 * system_qubits + l > kMaxQubits) {
    throw CapacityError("phase estimation needs " + std::to_string(2 * system_qubits + l) +
                        " qubits, cap is " + std::to_string(kMaxQubits));
  }
}

}  // namespace

double PhaseDistribution::frequency(std::uint64_t f) const { return outcome_frequency(f, l, delta); }

bool ResolutionPlan::satisfies_bounds() const {
  constexpr double slack = 1e-12;
  const double scaled = delta * static_cast<double>(pow2(l)) / kTwoPi;
  const double lower = 1.0 / gamma;
  const double upper = static_cast<double>(pow2(l) - 1) / omega_max;
  return lower <= scaled * (1.0 + slack) && scaled <= upper * (1.0 + slack);
}

StateVector qpe_final_state(const StateVector& prepared, const EigenDecomposition& hamiltonian,
                            std::size_t l, double delta) {
  const std::size_t n = qubits_of_dim(hamiltonian.dim());
  check_qpe_args(prepared, n, l, delta);
  const auto layout = RegisterLayout::for_phase_estimation(n, l);
  const QubitRange both{0, 2 * n};

  StateVector plus(l);
  for (std::size_t q = 0; q < l; ++q) plus = apply_hadamard(std::move(plus), q);
  StateVector state = tensor_product(prepared, plus);
  layout.validate(state.num_qubits());

  // The controlled evolutions are all diagonal in the eigenbasis of H on each
  // copy, so rotate both copies there once and rotate back at the end.
  const ComplexMatrix& v = hamiltonian.eigenvectors;
  const ComplexMatrix v_dag = v.adjoint();
  state = apply_unitary(std::move(state), layout.copy_a, v_dag);
  state = apply_unitary(std::move(state), layout.copy_b, v_dag);

  const auto dim = hamiltonian.dim();
  std::vector<Complex> phases(dim * dim);
  for (std::size_t j = 0; j < l; ++j) {
    const double step = delta * static_cast<double>(pow2(j));
    for (std::size_t a = 0; a < dim; ++a) {
      for (std::size_t b = 0; b < dim; ++b) {
        const double gap = hamiltonian.eigenvalues[static_cast<Eigen::Index>(a)] -
                           hamiltonian.eigenvalues[static_cast<Eigen::Index>(b)];
        phases[a * dim + b] = std::polar(1.0, step * gap);
      }
    }
    const std::size_t control = layout.phase.end() - 1 - j;
    state = apply_controlled_diagonal(std::move(state), control, both, phases);
  }

  state = apply_unitary(std::move(state), layout.copy_a, v);
  state = apply_unitary(std::move(state), layout.copy_b, v);
  return inverse_qft(std::move(state), layout.phase);
}

PhaseDistribution run_qpe(const StateVector& prepared, const EigenDecomposition& hamiltonian,
                          std::size_t l, double delta) {
  const std::size_t n = qubits_of_dim(hamiltonian.dim());
  const StateVector final_state = qpe_final_state(prepared, hamiltonian, l, delta);
  PhaseDistribution out;
  out.l = l;
  out.delta = delta;
  out.kind = PhaseDistribution::Kind::exact;
  out.probabilities = register_distribution(final_state, {2 * n, l});
  return out;
}

PhaseDistribution run_qpe(const StateVector& prepared, const HermitianOperator& hamiltonian,
                          std::size_t l, double delta) {
  check_qpe_args(prepared, hamiltonian.num_qubits(), l, delta);
  return run_qpe(prepared, eig_hermitian(hamiltonian), l, delta);
}

PhaseDistribution sample_outcomes(const PhaseDistribution& dist, std::uint64_t shots, std::uint64_t seed) {
  if (dist.kind != PhaseDistribution::Kind::exact) throw ArgumentError("sampling needs an exact distribution");
  if (shots == 0) throw ArgumentError("sampling needs at least one shot");
  std::mt19937_64 rng(seed);
  PhaseDistribution out;
  out.l = dist.l;
  out.delta = dist.delta;
  out.kind = PhaseDistribution::Kind::empirical;
  out.shots = shots;
  out.counts = multinomial_counts(shots, dist.probabilities, rng);
  out.probabilities.resize(out.counts.size());
  for (std::size_t f = 0; f < out.counts.size(); ++f) {
    out.probabilities[f] = static_cast<double>(out.counts[f]) / static_cast<double>(shots);
  }
  return out;
}

double outcome_frequency(std::uint64_t f, std::size_t l, double delta) {
  if (l == 0 || l > 62) throw ArgumentError("phase register size out of range");
  if (f >= pow2(l)) throw ArgumentError("outcome " + std::to_string(f) + " outside the register");
  if (!(delta > 0.0)) throw ArgumentError("coupling time delta must be positive");
  const double size = static_cast<double>(pow2(l));
  const double wrapped = f < pow2(l - 1) ? static_cast<double>(f) : static_cast<double>(f) - size;
  return kTwoPi * wrapped / (delta * size);
}

double frequency_to_outcome(double omega, std::size_t l, double delta) {
  if (l == 0 || l > 62) throw ArgumentError("phase register size out of range");
  const double size = static_cast<double>(pow2(l));
  double x = std::fmod(delta * size * omega / kTwoPi, size);
  if (x < 0.0) x += size;
  if (x >= size) x -= size;
  return x;
}

ResolutionPlan plan_resolution(double omega_max, double gamma) {
  if (!(omega_max > 0.0) || !std::isfinite(omega_max)) throw ArgumentError("omega_max must be positive");
  if (!(gamma > 0.0)) throw ArgumentError("gamma must be positive");
  if (!(gamma < omega_max)) throw ArgumentError("gamma >= omega_max leaves nothing to resolve");
  ResolutionPlan plan;
  plan.omega_max = omega_max;
  plan.gamma = gamma;
  const double needed = 1.0 + omega_max / gamma;
  while (static_cast<double>(pow2(plan.l)) < needed) {
    if (++plan.l > kMaxPlanBits) throw ArgumentError("resolution needs more than 40 phase bits");
  }
  plan.delta = kTwoPi / (gamma * static_cast<double>(pow2(plan.l)));
  return plan;
}

}  // namespace qspec
