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
 * Dense state-vector kernels: the qubit register types, Hermitian operators
 * with their eigendecomposition, exact time evolution, controlled gates, the
 * quantum Fourier transform and register marginals.
 *
 * Qubit ordering: qubit 0 is the most significant bit of the computational
 * index, so tensor factors compose left to right. A contiguous register
 * [first, first + count) reads its value with qubit `first` as the MSB.
 */

#pragma once

#include <Eigen/Dense>
#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qspec {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Total qubit budget for a single dense state (2^22 amplitudes).
inline constexpr std::size_t kMaxQubits = 22;

inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kUnitarityTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-10;

inline std::uint64_t pow2(std::size_t k) { return std::uint64_t{1} << k; }
/// log2 of a power-of-two dimension.
inline std::size_t qubits_of_dim(std::uint64_t dim) { return static_cast<std::size_t>(std::countr_zero(dim)); }

/// Contiguous run of qubits [first, first + count).
struct QubitRange {
  std::size_t first = 0;
  std::size_t count = 0;

  std::size_t end() const { return first + count; }
  bool contains(std::size_t qubit) const { return qubit >= first && qubit < end(); }
  bool overlaps(const QubitRange& other) const {
    return count > 0 && other.count > 0 && first < other.end() && other.first < end();
  }
  bool operator==(const QubitRange&) const = default;
};

/// Complex amplitudes over 2^num_qubits computational states.
class StateVector {
 public:
  StateVector() = default;

  /// |0...0> on `num_qubits` qubits.
  explicit StateVector(std::size_t num_qubits);

  static StateVector basis(std::size_t num_qubits, std::uint64_t index);

  /// Wraps raw amplitudes; the length must be a power of two. The normalized
  /// flag is set when the 2-norm is 1 within kNormTolerance.
  static StateVector from_amplitudes(ComplexVector amplitudes);

  std::size_t num_qubits() const { return num_qubits_; }
  std::uint64_t dimension() const { return static_cast<std::uint64_t>(amplitudes_.size()); }
  bool normalized() const { return normalized_; }

  const ComplexVector& amplitudes() const { return amplitudes_; }
  // Mutable access for gate kernels; callers must keep the norm intact.
  ComplexVector& amplitudes() { return amplitudes_; }

  Complex operator[](std::uint64_t index) const { return amplitudes_[static_cast<Eigen::Index>(index)]; }

  double norm() const { return amplitudes_.norm(); }

  /// Rescales to unit norm. Throws ZeroNormError when the norm is below `min_norm`.
  void normalize(double min_norm = 1e-12);

 private:
  std::size_t num_qubits_ = 0;
  ComplexVector amplitudes_;
  bool normalized_ = false;
};

/// Placement of the two system copies, the phase register and the optional
/// preparation ancilla inside one StateVector.
struct RegisterLayout {
  QubitRange copy_a;
  QubitRange copy_b;
  QubitRange phase;
  std::optional<std::size_t> prep_ancilla;

  std::size_t total_qubits() const;

  /// Throws DimensionError unless the ranges are pairwise disjoint and cover
  /// exactly `num_qubits` qubits.
  void validate(std::size_t num_qubits) const;

  /// copy_a = [0, N), copy_b = [N, 2N), phase = [2N, 2N + l).
  static RegisterLayout for_phase_estimation(std::size_t system_qubits, std::size_t phase_bits);
  /// copy_a = [0, N), copy_b = [N, 2N), ancilla = 2N.
  static RegisterLayout for_preparation(std::size_t system_qubits);
};

/// Dense Hermitian matrix on 2^num_qubits dimensions.
class HermitianOperator {
 public:
  /// Throws DimensionError for non-square or non power-of-two input and
  /// HermiticityError when max |M - M^dagger| exceeds kHermiticityTolerance.
  explicit HermitianOperator(ComplexMatrix matrix);

  static HermitianOperator zero(std::size_t num_qubits);
  static HermitianOperator diagonal(const RealVector& entries);

  std::uint64_t dim() const { return static_cast<std::uint64_t>(matrix_.rows()); }
  std::size_t num_qubits() const { return num_qubits_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  /// True when every imaginary part is exactly zero.
  bool is_real() const;

  HermitianOperator scaled(double factor) const;

 private:
  ComplexMatrix matrix_;
  std::size_t num_qubits_ = 0;
};

/// Spectral decomposition M = V diag(eigenvalues) V^dagger with ascending
/// eigenvalues; column n of `eigenvectors` belongs to eigenvalues[n].
struct EigenDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  std::size_t dim() const { return static_cast<std::size_t>(eigenvalues.size()); }
  ComplexMatrix reconstruct() const;
};

/// Largest entry of |M - M^dagger|.
double hermiticity_violation(const ComplexMatrix& matrix);

/// Largest entry of |U^dagger U - 1|.
double unitarity_violation(const ComplexMatrix& matrix);

StateVector tensor_product(const StateVector& a, const StateVector& b);

EigenDecomposition eig_hermitian(const HermitianOperator& op);
/// Raw-matrix entry point; rejects non-Hermitian input with HermiticityError.
EigenDecomposition eig_hermitian(const ComplexMatrix& matrix);

/// Builds V diag(f(lambda)) V^dagger for a spectral function given per eigenvalue.
ComplexMatrix spectral_matrix(const EigenDecomposition& eig, std::span<const Complex> values);

enum class TimeDirection : int { forward = 1, backward = -1 };

/// exp(i * sign * t * H) as a dense matrix.
ComplexMatrix evolution_operator(const EigenDecomposition& eig, double t, TimeDirection sign);

// Gate kernels. All take the state by value and hand it back, so callers can
// move a state through a circuit without copies.

/// Applies `unitary` (2^k x 2^k) to the k qubits of `target`.
StateVector apply_unitary(StateVector state, QubitRange target, const ComplexMatrix& unitary);

/// Exact evolution of `target` under exp(i * sign * t * H), built from the
/// eigendecomposition of H.
StateVector evolve(StateVector state, const HermitianOperator& hamiltonian, double t,
                   TimeDirection sign, QubitRange target);
StateVector evolve(StateVector state, const EigenDecomposition& hamiltonian, double t,
                   TimeDirection sign, QubitRange target);

/// Multiplies the control = 1 branch by `unitary` on `target`. Throws
/// DimensionError for an overlapping control and UnitarityError for a
/// non-unitary matrix.
StateVector apply_controlled_unitary(StateVector state, std::size_t control, QubitRange target,
                                     const ComplexMatrix& unitary);

/// Controlled diagonal gate: on the control = 1 branch the register value r
/// of `target` picks up the factor diagonal[r].
StateVector apply_controlled_diagonal(StateVector state, std::size_t control, QubitRange target,
                                      std::span<const Complex> diagonal);

StateVector apply_single_qubit(StateVector state, std::size_t qubit, const Eigen::Matrix2cd& gate);
StateVector apply_hadamard(StateVector state, std::size_t qubit);
/// diag(1, 1, 1, e^{i angle}) on (control, target).
StateVector apply_controlled_phase(StateVector state, std::size_t control, std::size_t target,
                                   double angle);
StateVector swap_qubits(StateVector state, std::size_t a, std::size_t b);

/// Forward transform |x> -> 2^{-l/2} sum_k e^{+2 pi i x k / 2^l} |k>.
StateVector qft(StateVector state, QubitRange reg);
/// Inverse transform with matrix elements 2^{-l/2} e^{-2 pi i x k / 2^l}: a
/// phase gradient e^{+2 pi i k0 x / 2^l} over the register maps to |k0>.
StateVector inverse_qft(StateVector state, QubitRange reg);

/// Marginal outcome probabilities of `reg`. Throws NormalizationError for an
/// unnormalized state.
std::vector<double> register_distribution(const StateVector& state, QubitRange reg);

/// Sub-state on the remaining qubits for which `qubit` reads `bit`
/// (unnormalized; its squared norm is the branch probability).
StateVector extract_branch(const StateVector& state, std::size_t qubit, int bit);

Complex inner_product(const StateVector& bra, const StateVector& ket);

/// |<a|b>|^2 for normalized inputs.
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace qspec
