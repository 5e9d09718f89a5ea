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

#include "qspec/simcore.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qspec/errors.hpp"

namespace qspec {

namespace {

void check_qubit_count(std::size_t num_qubits) {
  if (num_qubits > kMaxQubits) {
    throw CapacityError("state needs " + std::to_string(num_qubits) + " qubits, cap is " +
                        std::to_string(kMaxQubits));
  }
}

std::size_t log2_exact(std::uint64_t n, const char* what) {
  if (n == 0 || !std::has_single_bit(n)) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(n) +
                         " is not a power of two");
  }
  return static_cast<std::size_t>(std::countr_zero(n));
}

void check_qubit(const StateVector& state, std::size_t qubit) {
  if (qubit >= state.num_qubits()) {
    throw DimensionError("qubit " + std::to_string(qubit) + " outside a " +
                         std::to_string(state.num_qubits()) + "-qubit state");
  }
}

void check_range(const StateVector& state, QubitRange range) {
  if (range.count == 0 || range.end() > state.num_qubits()) {
    throw DimensionError("register [" + std::to_string(range.first) + ", " +
                         std::to_string(range.end()) + ") does not fit a " +
                         std::to_string(state.num_qubits()) + "-qubit state");
  }
}

// Bit position of `qubit` inside the computational index (qubit 0 is the MSB).
std::size_t bit_of(const StateVector& state, std::size_t qubit) {
  return state.num_qubits() - 1 - qubit;
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector
// ---------------------------------------------------------------------------

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits), normalized_(true) {
  check_qubit_count(num_qubits);
  amplitudes_ = ComplexVector::Zero(static_cast<Eigen::Index>(pow2(num_qubits)));
  amplitudes_[0] = 1.0;
}

StateVector StateVector::basis(std::size_t num_qubits, std::uint64_t index) {
  StateVector state(num_qubits);
  if (index >= state.dimension()) {
    throw DimensionError("basis index " + std::to_string(index) + " outside dimension " +
                         std::to_string(state.dimension()));
  }
  state.amplitudes_[0] = 0.0;
  state.amplitudes_[static_cast<Eigen::Index>(index)] = 1.0;
  return state;
}

StateVector StateVector::from_amplitudes(ComplexVector amplitudes) {
  StateVector state;
  state.num_qubits_ = log2_exact(static_cast<std::uint64_t>(amplitudes.size()), "amplitudes");
  check_qubit_count(state.num_qubits_);
  state.amplitudes_ = std::move(amplitudes);
  state.normalized_ = std::abs(state.amplitudes_.norm() - 1.0) <= kNormTolerance;
  return state;
}

void StateVector::normalize(double min_norm) {
  const double n = amplitudes_.norm();
  if (!(n > min_norm)) {
    throw ZeroNormError("cannot normalize a state with norm " + std::to_string(n));
  }
  amplitudes_ /= n;
  normalized_ = true;
}

// ---------------------------------------------------------------------------
// RegisterLayout
// ---------------------------------------------------------------------------

std::size_t RegisterLayout::total_qubits() const {
  return copy_a.count + copy_b.count + phase.count + (prep_ancilla ? 1 : 0);
}

void RegisterLayout::validate(std::size_t num_qubits) const {
  std::vector<QubitRange> ranges{copy_a, copy_b, phase};
  if (prep_ancilla) ranges.push_back({*prep_ancilla, 1});
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    for (std::size_t j = i + 1; j < ranges.size(); ++j) {
      if (ranges[i].overlaps(ranges[j])) throw DimensionError("register ranges overlap");
    }
  }
  std::vector<bool> covered(num_qubits, false);
  for (const auto& r : ranges) {
    for (std::size_t q = r.first; q < r.end(); ++q) {
      if (q >= num_qubits) throw DimensionError("register range exceeds the state");
      covered[q] = true;
    }
  }
  if (!std::all_of(covered.begin(), covered.end(), [](bool c) { return c; })) {
    throw DimensionError("register layout leaves qubits unassigned");
  }
}

RegisterLayout RegisterLayout::for_phase_estimation(std::size_t system_qubits,
                                                    std::size_t phase_bits) {
  return {{0, system_qubits}, {system_qubits, system_qubits}, {2 * system_qubits, phase_bits},
          std::nullopt};
}

RegisterLayout RegisterLayout::for_preparation(std::size_t system_qubits) {
  return {{0, system_qubits}, {system_qubits, system_qubits}, {2 * system_qubits, 0},
          2 * system_qubits};
}

// ---------------------------------------------------------------------------
// HermitianOperator / EigenDecomposition
// ---------------------------------------------------------------------------

double hermiticity_violation(const ComplexMatrix& matrix) {
  if (matrix.size() == 0) return 0.0;
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_violation(const ComplexMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) return std::numeric_limits<double>::infinity();
  const auto identity = ComplexMatrix::Identity(matrix.rows(), matrix.cols());
  return (matrix.adjoint() * matrix - identity).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw DimensionError("operator matrix is not square");
  num_qubits_ = log2_exact(static_cast<std::uint64_t>(matrix_.rows()), "operator");
  const double violation = hermiticity_violation(matrix_);
  if (!(violation <= kHermiticityTolerance)) {
    throw HermiticityError("operator is not Hermitian: max |M - M^dagger| = " +
                           std::to_string(violation));
  }
}

HermitianOperator HermitianOperator::zero(std::size_t num_qubits) {
  const auto dim = static_cast<Eigen::Index>(pow2(num_qubits));
  return HermitianOperator(ComplexMatrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::diagonal(const RealVector& entries) {
  ComplexMatrix m = ComplexMatrix::Zero(entries.size(), entries.size());
  m.diagonal() = entries.cast<Complex>();
  return HermitianOperator(std::move(m));
}

bool HermitianOperator::is_real() const { return (matrix_.imag().array() == 0.0).all(); }

HermitianOperator HermitianOperator::scaled(double factor) const {
  return HermitianOperator(matrix_ * factor);
}

ComplexMatrix EigenDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

EigenDecomposition eig_hermitian(const HermitianOperator& op) {
  const ComplexMatrix& m = op.matrix();
  EigenDecomposition out;
  if (m.isDiagonal(0.0)) {
    // Diagonal input: sort the entries, eigenvectors are permuted basis states.
    const auto dim = m.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return m(a, a).real() < m(b, b).real();
    });
    out.eigenvalues.resize(dim);
    out.eigenvectors = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
      const auto i = order[static_cast<std::size_t>(n)];
      out.eigenvalues[n] = m(i, i).real();
      out.eigenvectors(i, n) = 1.0;
    }
  } else if (op.is_real()) {
    // Real symmetric input keeps real eigenvectors.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.real());
    if (solver.info() != Eigen::Success) throw Error("eigensolver failed to converge");
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success) throw Error("eigensolver failed to converge");
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
  }
  return out;
}

EigenDecomposition eig_hermitian(const ComplexMatrix& matrix) {
  return eig_hermitian(HermitianOperator(matrix));
}

ComplexMatrix spectral_matrix(const EigenDecomposition& eig, std::span<const Complex> values) {
  if (values.size() != eig.dim()) throw DimensionError("spectral values do not match dimension");
  const Eigen::Map<const ComplexVector> f(values.data(), static_cast<Eigen::Index>(values.size()));
  return eig.eigenvectors * f.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix evolution_operator(const EigenDecomposition& eig, double t, TimeDirection sign) {
  const double s = static_cast<double>(static_cast<int>(sign)) * t;
  std::vector<Complex> phases(eig.dim());
  for (std::size_t n = 0; n < phases.size(); ++n) {
    phases[n] = std::polar(1.0, s * eig.eigenvalues[static_cast<Eigen::Index>(n)]);
  }
  return spectral_matrix(eig, phases);
}

// ---------------------------------------------------------------------------
// Gates
// ---------------------------------------------------------------------------

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  check_qubit_count(a.num_qubits() + b.num_qubits());
  ComplexVector out(static_cast<Eigen::Index>(a.dimension() * b.dimension()));
  const auto nb = static_cast<Eigen::Index>(b.dimension());
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.dimension()); ++i) {
    out.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
  }
  return StateVector::from_amplitudes(std::move(out));
}

StateVector apply_unitary(StateVector state, QubitRange target, const ComplexMatrix& unitary) {
  check_range(state, target);
  const auto d = static_cast<Eigen::Index>(pow2(target.count));
  if (unitary.rows() != d || unitary.cols() != d) {
    throw DimensionError("gate dimension does not match the target register");
  }
  const auto low = static_cast<Eigen::Index>(pow2(state.num_qubits() - target.end()));
  const auto high = static_cast<Eigen::Index>(pow2(target.first));
  const ComplexMatrix transposed = unitary.transpose();
  auto& amps = state.amplitudes();
  // Within one high-index block the amplitudes form a column-major
  // (low x d) matrix M(lo, r); the gate acts as M <- M U^T.
  for (Eigen::Index h = 0; h < high; ++h) {
    Eigen::Map<ComplexMatrix> block(amps.data() + h * d * low, low, d);
    block = block * transposed;
  }
  return state;
}

StateVector evolve(StateVector state, const EigenDecomposition& hamiltonian, double t,
                   TimeDirection sign, QubitRange target) {
  check_range(state, target);
  if (hamiltonian.dim() != pow2(target.count)) {
    throw DimensionError("Hamiltonian dimension does not match the target register");
  }
  if (t == 0.0) return state;
  return apply_unitary(std::move(state), target, evolution_operator(hamiltonian, t, sign));
}

StateVector evolve(StateVector state, const HermitianOperator& hamiltonian, double t,
                   TimeDirection sign, QubitRange target) {
  check_range(state, target);
  if (hamiltonian.dim() != pow2(target.count)) {
    throw DimensionError("Hamiltonian dimension does not match the target register");
  }
  return evolve(std::move(state), eig_hermitian(hamiltonian), t, sign, target);
}

StateVector apply_controlled_unitary(StateVector state, std::size_t control, QubitRange target,
                                     const ComplexMatrix& unitary) {
  check_range(state, target);
  check_qubit(state, control);
  if (target.contains(control)) throw DimensionError("control qubit lies inside the target register");
  const auto d = static_cast<Eigen::Index>(pow2(target.count));
  if (unitary.rows() != d || unitary.cols() != d) {
    throw DimensionError("gate dimension does not match the target register");
  }
  const double violation = unitarity_violation(unitary);
  if (!(violation <= kUnitarityTolerance)) {
    throw UnitarityError("controlled gate is not unitary: max |U^dagger U - 1| = " +
                         std::to_string(violation));
  }

  const auto low = static_cast<Eigen::Index>(pow2(state.num_qubits() - target.end()));
  const auto high = static_cast<Eigen::Index>(pow2(target.first));
  const ComplexMatrix transposed = unitary.transpose();
  auto& amps = state.amplitudes();

  if (control < target.first) {
    const std::uint64_t mask = pow2(target.first - 1 - control);
    for (Eigen::Index h = 0; h < high; ++h) {
      if ((static_cast<std::uint64_t>(h) & mask) == 0) continue;
      Eigen::Map<ComplexMatrix> block(amps.data() + h * d * low, low, d);
      block = block * transposed;
    }
  } else {
    const std::uint64_t mask = pow2(state.num_qubits() - 1 - control);
    std::vector<Eigen::Index> rows;
    rows.reserve(static_cast<std::size_t>(low / 2));
    for (Eigen::Index lo = 0; lo < low; ++lo) {
      if (static_cast<std::uint64_t>(lo) & mask) rows.push_back(lo);
    }
    for (Eigen::Index h = 0; h < high; ++h) {
      Eigen::Map<ComplexMatrix> block(amps.data() + h * d * low, low, d);
      ComplexMatrix selected = block(rows, Eigen::all);
      block(rows, Eigen::all) = selected * transposed;
    }
  }
  return state;
}

StateVector apply_controlled_diagonal(StateVector state, std::size_t control, QubitRange target,
                                      std::span<const Complex> diagonal) {
  check_range(state, target);
  check_qubit(state, control);
  if (target.contains(control)) throw DimensionError("control qubit lies inside the target register");
  if (diagonal.size() != pow2(target.count)) {
    throw DimensionError("diagonal length does not match the target register");
  }
  const std::uint64_t control_mask = pow2(bit_of(state, control));
  const std::size_t shift = state.num_qubits() - target.end();
  const std::uint64_t reg_mask = pow2(target.count) - 1;
  auto& amps = state.amplitudes();
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    if ((i & control_mask) == 0) continue;
    amps[static_cast<Eigen::Index>(i)] *= diagonal[(i >> shift) & reg_mask];
  }
  return state;
}

StateVector apply_single_qubit(StateVector state, std::size_t qubit, const Eigen::Matrix2cd& gate) {
  check_qubit(state, qubit);
  return apply_unitary(std::move(state), {qubit, 1}, ComplexMatrix(gate));
}

StateVector apply_hadamard(StateVector state, std::size_t qubit) {
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix2cd h;
  h << r, r, r, -r;
  return apply_single_qubit(std::move(state), qubit, h);
}

StateVector apply_controlled_phase(StateVector state, std::size_t control, std::size_t target,
                                   double angle) {
  check_qubit(state, control);
  check_qubit(state, target);
  if (control == target) throw DimensionError("controlled phase needs two distinct qubits");
  const std::uint64_t mask = pow2(bit_of(state, control)) | pow2(bit_of(state, target));
  const Complex phase = std::polar(1.0, angle);
  auto& amps = state.amplitudes();
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    if ((i & mask) == mask) amps[static_cast<Eigen::Index>(i)] *= phase;
  }
  return state;
}

StateVector swap_qubits(StateVector state, std::size_t a, std::size_t b) {
  check_qubit(state, a);
  check_qubit(state, b);
  if (a == b) return state;
  const std::uint64_t ma = pow2(bit_of(state, a));
  const std::uint64_t mb = pow2(bit_of(state, b));
  auto& amps = state.amplitudes();
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    if ((i & ma) && !(i & mb)) {
      std::swap(amps[static_cast<Eigen::Index>(i)], amps[static_cast<Eigen::Index>(i ^ ma ^ mb)]);
    }
  }
  return state;
}

StateVector qft(StateVector state, QubitRange reg) {
  check_range(state, reg);
  const std::size_t l = reg.count;
  for (std::size_t i = 0; i < l; ++i) {
    state = apply_hadamard(std::move(state), reg.first + i);
    for (std::size_t j = i + 1; j < l; ++j) {
      const double angle = 2.0 * std::numbers::pi / static_cast<double>(pow2(j - i + 1));
      state = apply_controlled_phase(std::move(state), reg.first + j, reg.first + i, angle);
    }
  }
  for (std::size_t i = 0; i < l / 2; ++i) {
    state = swap_qubits(std::move(state), reg.first + i, reg.first + l - 1 - i);
  }
  return state;
}

StateVector inverse_qft(StateVector state, QubitRange reg) {
  check_range(state, reg);
  const std::size_t l = reg.count;
  for (std::size_t i = 0; i < l / 2; ++i) {
    state = swap_qubits(std::move(state), reg.first + i, reg.first + l - 1 - i);
  }
  for (std::size_t i = l; i-- > 0;) {
    for (std::size_t j = l; --j > i;) {
      const double angle = -2.0 * std::numbers::pi / static_cast<double>(pow2(j - i + 1));
      state = apply_controlled_phase(std::move(state), reg.first + j, reg.first + i, angle);
    }
    state = apply_hadamard(std::move(state), reg.first + i);
  }
  return state;
}

std::vector<double> register_distribution(const StateVector& state, QubitRange reg) {
  check_range(state, reg);
  const double norm2 = state.amplitudes().squaredNorm();
  if (!(std::abs(norm2 - 1.0) <= kNormTolerance)) {
    throw NormalizationError("register marginal needs a normalized state, |psi|^2 = " +
                             std::to_string(norm2));
  }
  const std::size_t shift = state.num_qubits() - reg.end();
  const std::uint64_t reg_mask = pow2(reg.count) - 1;
  std::vector<double> probs(pow2(reg.count), 0.0);
  const auto& amps = state.amplitudes();
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    probs[(i >> shift) & reg_mask] += std::norm(amps[static_cast<Eigen::Index>(i)]);
  }
  return probs;
}

StateVector extract_branch(const StateVector& state, std::size_t qubit, int bit) {
  check_qubit(state, qubit);
  if (bit != 0 && bit != 1) throw DimensionError("branch bit must be 0 or 1");
  const std::size_t p = bit_of(state, qubit);
  const std::uint64_t low_mask = pow2(p) - 1;
  ComplexVector out(static_cast<Eigen::Index>(state.dimension() / 2));
  for (std::uint64_t j = 0; j < state.dimension() / 2; ++j) {
    const std::uint64_t i = ((j >> p) << (p + 1)) | (static_cast<std::uint64_t>(bit) << p) | (j & low_mask);
    out[static_cast<Eigen::Index>(j)] = state[i];
  }
  return StateVector::from_amplitudes(std::move(out));
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
  if (bra.dimension() != ket.dimension()) throw DimensionError("inner product of mismatched states");
  return bra.amplitudes().dot(ket.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner_product(a, b)); }

}  // namespace qspec
