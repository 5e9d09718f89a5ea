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

#include "qspec/stateprep.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qspec/errors.hpp"
#include "qspec/purify.hpp"

namespace qspec {

namespace {

constexpr double kEmptyBranch = 1e-24;

double sin_half_sq(double phi, double x) {
  const double s = std::sin(0.5 * phi * x);
  return s * s;
}

}  // namespace

SpectralMeasure spectral_measure(const HermitianOperator& op, const StateVector& base) {
  if (base.num_qubits() != 2 * op.num_qubits()) {
    throw DimensionError("base state does not match the doubled operator space");
  }
  const auto eig = eig_hermitian(op);
  const ComplexMatrix rotated = eig.eigenvectors.adjoint() * pair_matrix(base);
  SpectralMeasure out{eig.eigenvalues, rotated.rowwise().squaredNorm()};
  const double total = out.weights.sum();
  if (!(std::abs(total - 1.0) <= kNormTolerance)) {
    throw NormalizationError("preparation base state is not normalized");
  }
  return out;
}

SpectralMeasure spectral_measure(const HermitianOperator& op) {
  const auto eig = eig_hermitian(op);
  const auto d = eig.eigenvalues.size();
  return {eig.eigenvalues, RealVector::Constant(d, 1.0 / static_cast<double>(d))};
}

MomentSet moments(const SpectralMeasure& measure) {
  MomentSet m;
  for (Eigen::Index i = 0; i < measure.values.size(); ++i) {
    const double x = measure.values[i];
    const double p = measure.weights[i];
    const double x2 = x * x;
    m.m1 += p * x;
    m.m2 += p * x2;
    m.m3 += p * x2 * x;
    m.m4 += p * x2 * x2;
  }
  return m;
}

double moment_ratio_constant(const EigenvalueDistribution& dist) {
  dist.validate();
  const double m2 = dist.second_moment();
  return m2 * m2 / dist.fourth_moment();
}

double small_angle_ratio(const MomentSet& m) {
  if (!(m.m2 > 0.0)) throw ZeroNormError("small-angle ratio needs <O^2> > 0");
  return m.m2 * m.m2 / (m.m4 - m.m3 * m.m3 / m.m2);
}

double acceptance_probability(const SpectralMeasure& measure, double phi) {
  double p = 0.0;
  for (Eigen::Index i = 0; i < measure.values.size(); ++i) {
    p += measure.weights[i] * sin_half_sq(phi, measure.values[i]);
  }
  return p;
}

double acceptance_probability(const HermitianOperator& op, double phi, const StateVector& base) {
  return acceptance_probability(spectral_measure(op, base), phi);
}

double acceptance_probability(const HermitianOperator& op, double phi) {
  return acceptance_probability(spectral_measure(op), phi);
}

double preparation_fidelity(const SpectralMeasure& measure, double phi) {
  if (phi == 0.0) throw DegenerateAngleError("fidelity is undefined at phi = 0");
  double m1 = 0.0;
  double m2 = 0.0;
  double branch = 0.0;  // <4 sin^2(phi O / 2)>
  Complex o_u = 0.0;    // <O e^{i phi O}>
  for (Eigen::Index i = 0; i < measure.values.size(); ++i) {
    const double x = measure.values[i];
    const double p = measure.weights[i];
    m1 += p * x;
    m2 += p * x * x;
    branch += 4.0 * p * sin_half_sq(phi, x);
    o_u += p * x * std::polar(1.0, phi * x);
  }
  if (!(m2 > 0.0)) throw ZeroNormError("operator annihilates the base state");
  if (!(branch > 4.0 * kEmptyBranch)) {
    throw DegenerateAngleError("accepted branch is empty at phi = " + std::to_string(phi));
  }
  return std::norm(m1 - o_u) / (m2 * branch);
}

double preparation_fidelity(const HermitianOperator& op, double phi, const StateVector& base) {
  return preparation_fidelity(spectral_measure(op, base), phi);
}

double preparation_fidelity(const HermitianOperator& op, double phi) {
  return preparation_fidelity(spectral_measure(op), phi);
}

PrepBranches simulate_prep_circuit(const HermitianOperator& op, double phi, const StateVector& base) {
  const std::size_t n = op.num_qubits();
  if (base.num_qubits() != 2 * n) throw DimensionError("base state does not match the doubled operator space");
  if (2 * n + 1 > kMaxQubits) throw CapacityError("preparation circuit exceeds the qubit cap");
  const auto layout = RegisterLayout::for_preparation(n);
  const std::size_t ancilla = *layout.prep_ancilla;

  const auto eig = eig_hermitian(op);
  StateVector state = tensor_product(base, StateVector(1));
  layout.validate(state.num_qubits());
  state = apply_hadamard(std::move(state), ancilla);
  state = apply_controlled_unitary(std::move(state), ancilla, layout.copy_a,
                                   evolution_operator(eig, phi, TimeDirection::forward));
  state = apply_hadamard(std::move(state), ancilla);

  PrepBranches out;
  out.accepted_state = extract_branch(state, ancilla, 1);
  out.acceptance_probability = out.accepted_state.amplitudes().squaredNorm();
  out.rejection_probability = extract_branch(state, ancilla, 0).amplitudes().squaredNorm();
  if (!(out.acceptance_probability > kEmptyBranch)) {
    throw DegenerateAngleError("accepted branch is empty at phi = " + std::to_string(phi));
  }
  out.accepted_state.normalize(0.0);

  StateVector target = apply_on_first_copy(op, base);
  target.normalize(1e-12);
  out.fidelity_with_target = fidelity(target, out.accepted_state);
  return out;
}

bool draw_acceptance(double acceptance_probability, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return std::bernoulli_distribution(std::clamp(acceptance_probability, 0.0, 1.0))(rng);
}

PrepOutcome run_prep_circuit(const HermitianOperator& op, double phi, const StateVector& base,
                             std::uint64_t seed) {
  auto branches = simulate_prep_circuit(op, phi, base);
  PrepOutcome out;
  out.acceptance_probability = branches.acceptance_probability;
  out.fidelity_with_target = branches.fidelity_with_target;
  out.accepted = draw_acceptance(branches.acceptance_probability, seed);
  if (out.accepted) out.post_state = std::move(branches.accepted_state);
  return out;
}

std::optional<std::string> traceless_warning(const HermitianOperator& op) {
  const double mean = std::abs(op.matrix().trace()) / static_cast<double>(op.dim());
  if (mean > 1e-12) {
    return "observable is not traceless (|Tr O| / 2^N = " + std::to_string(mean) +
           "); small-angle expansions assume <O> = 0";
  }
  return std::nullopt;
}

namespace {

PhiChoice choose_phi_from(const SpectralMeasure& measure, const HermitianOperator& op, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ArgumentError("epsilon must lie in (0, 1)");
  PhiChoice out;
  out.moments = moments(measure);
  if (!(out.moments.m4 > 0.0)) throw ZeroNormError("choose_phi needs <O^4> > 0");
  const double m2 = out.moments.m2;
  const double m4 = out.moments.m4;
  out.phi = std::sqrt(epsilon * m2 / m4);
  out.predicted_acceptance = epsilon * m2 * m2 / m4;
  out.leading_order_acceptance = 0.25 * out.phi * out.phi * m2;

  // Singular values of a Hermitian operator are |eigenvalues|.
  const RealVector singular = measure.values.cwiseAbs();
  out.largest_singular_value = singular.maxCoeff();
  const double cutoff = 1e-12 * out.largest_singular_value;
  out.smallest_singular_value = out.largest_singular_value;
  for (Eigen::Index i = 0; i < singular.size(); ++i) {
    if (singular[i] > cutoff) {
      ++out.rank;
      out.smallest_singular_value = std::min(out.smallest_singular_value, singular[i]);
    }
  }
  const double omax2 = out.largest_singular_value * out.largest_singular_value;
  out.moment_bound = epsilon * m2 / omax2;
  const double ratio = out.smallest_singular_value / out.largest_singular_value;
  out.rank_bound = epsilon * static_cast<double>(out.rank) / static_cast<double>(op.dim()) * ratio * ratio;
  if (auto w = traceless_warning(op)) out.warnings.push_back(*w);
  return out;
}

}  // namespace

PhiChoice choose_phi(const HermitianOperator& op, double epsilon, const StateVector& base) {
  return choose_phi_from(spectral_measure(op, base), op, epsilon);
}

PhiChoice choose_phi(const HermitianOperator& op, double epsilon) {
  return choose_phi_from(spectral_measure(op), op, epsilon);
}

}  // namespace qspec
