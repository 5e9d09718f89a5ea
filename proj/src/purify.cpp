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

#include "qspec/purify.hpp"

#include <cmath>

#include "qspec/errors.hpp"

namespace qspec {

void EnsembleSpec::validate() const {
  if (kind == Kind::gibbs && !(std::isfinite(beta) && beta >= 0.0)) {
    throw DimensionError("gibbs ensemble needs a finite beta >= 0");
  }
}

std::string EnsembleSpec::name() const {
  switch (kind) {
    case Kind::infinite_temperature: return "infinite_temperature";
    case Kind::ground_state: return "ground_state";
    case Kind::gibbs: return "gibbs";
  }
  return "?";
}

EnsembleSpec::Kind EnsembleSpec::parse_kind(std::string_view name) {
  if (name == "infinite_temperature") return Kind::infinite_temperature;
  if (name == "ground_state") return Kind::ground_state;
  if (name == "gibbs") return Kind::gibbs;
  throw Error("unknown ensemble '" + std::string(name) + "'");
}

ComplexMatrix pair_matrix(const StateVector& doubled) {
  if (doubled.num_qubits() % 2 != 0) throw DimensionError("doubled state needs an even qubit count");
  const auto d = static_cast<Eigen::Index>(pow2(doubled.num_qubits() / 2));
  // Row-major reshape: A(i, j) = amplitude[i * d + j].
  return Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      doubled.amplitudes().data(), d, d);
}

StateVector from_pair_matrix(const ComplexMatrix& amplitudes) {
  if (amplitudes.rows() != amplitudes.cols()) throw DimensionError("pair matrix must be square");
  const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> row_major = amplitudes;
  ComplexVector flat = Eigen::Map<const ComplexVector>(row_major.data(), row_major.size());
  return StateVector::from_amplitudes(std::move(flat));
}

StateVector entangled_pair_state(std::size_t num_sites) {
  if (num_sites == 0) throw DimensionError("entangled pair state needs at least one site");
  if (2 * num_sites > kMaxQubits) throw CapacityError("entangled pair state exceeds the qubit cap");
  const auto d = static_cast<Eigen::Index>(pow2(num_sites));
  return from_pair_matrix(ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
}

StateVector purify_operator(const HermitianOperator& op) {
  if (2 * op.num_qubits() > kMaxQubits) throw CapacityError("purified state exceeds the qubit cap");
  const double trace_sq = op.matrix().squaredNorm();  // Tr O^dagger O = Tr O^2
  if (!(trace_sq > 1e-24)) throw ZeroNormError("cannot purify the zero operator");
  return from_pair_matrix(op.matrix() / std::sqrt(trace_sq));
}

StateVector purify_gibbs(const EigenDecomposition& hamiltonian, double beta) {
  EnsembleSpec::gibbs(beta).validate();
  if (2 * qubits_of_dim(hamiltonian.dim()) > kMaxQubits) {
    throw CapacityError("Gibbs purification exceeds the qubit cap");
  }
  const double e0 = hamiltonian.eigenvalues.minCoeff();
  std::vector<Complex> weights(hamiltonian.dim());
  double z = 0.0;
  for (std::size_t n = 0; n < weights.size(); ++n) {
    const double boltzmann = std::exp(-beta * (hamiltonian.eigenvalues[static_cast<Eigen::Index>(n)] - e0));
    z += boltzmann;
    weights[n] = std::sqrt(boltzmann);
  }
  const double inv_sqrt_z = 1.0 / std::sqrt(z);
  for (auto& w : weights) w *= inv_sqrt_z;
  return from_pair_matrix(spectral_matrix(hamiltonian, weights));
}

StateVector purify_gibbs(const HermitianOperator& hamiltonian, double beta) {
  return purify_gibbs(eig_hermitian(hamiltonian), beta);
}

GroundState find_ground_state(const EigenDecomposition& hamiltonian) {
  GroundState out;
  out.energy = hamiltonian.eigenvalues[0];
  const double tol = 1e-9 * std::max(1.0, std::abs(out.energy));
  out.degeneracy = 0;
  for (Eigen::Index n = 0; n < hamiltonian.eigenvalues.size(); ++n) {
    if (hamiltonian.eigenvalues[n] - out.energy <= tol) ++out.degeneracy;
  }
  out.state = StateVector::from_amplitudes(hamiltonian.eigenvectors.col(0));
  return out;
}

StateVector ensemble_base_state(const EigenDecomposition& hamiltonian, const EnsembleSpec& ensemble) {
  ensemble.validate();
  const auto num_sites = qubits_of_dim(hamiltonian.dim());
  switch (ensemble.kind) {
    case EnsembleSpec::Kind::infinite_temperature:
      return entangled_pair_state(num_sites);
    case EnsembleSpec::Kind::ground_state: {
      const auto ground = find_ground_state(hamiltonian);
      const auto partner = StateVector::from_amplitudes(ground.state.amplitudes().conjugate());
      return tensor_product(ground.state, partner);
    }
    case EnsembleSpec::Kind::gibbs:
      return purify_gibbs(hamiltonian, ensemble.beta);
  }
  throw Error("unhandled ensemble");
}

StateVector apply_on_first_copy(const HermitianOperator& op, const StateVector& base) {
  if (base.num_qubits() != 2 * op.num_qubits()) {
    throw DimensionError("operator does not match the doubled state");
  }
  return from_pair_matrix(op.matrix() * pair_matrix(base));
}

StateVector thermal_operator_state(const HermitianOperator& op, const EigenDecomposition& hamiltonian,
                                   const EnsembleSpec& ensemble) {
  if (op.dim() != hamiltonian.dim()) throw DimensionError("operator and Hamiltonian dimensions differ");
  if (ensemble.kind == EnsembleSpec::Kind::infinite_temperature) return purify_operator(op);
  StateVector out = apply_on_first_copy(op, ensemble_base_state(hamiltonian, ensemble));
  out.normalize(1e-12);
  return out;
}

StateVector thermal_operator_state(const HermitianOperator& op, const HermitianOperator& hamiltonian,
                                   const EnsembleSpec& ensemble) {
  if (op.dim() != hamiltonian.dim()) throw DimensionError("operator and Hamiltonian dimensions differ");
  return thermal_operator_state(op, eig_hermitian(hamiltonian), ensemble);
}

}  // namespace qspec
