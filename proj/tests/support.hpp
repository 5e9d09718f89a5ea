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

// Seeded generators and slow, independent reference implementations used by
// the tests. Nothing here calls into the code paths it is used to check.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qspec/models.hpp"
#include "qspec/simcore.hpp"

namespace qspec::testing {

inline constexpr double kPi = std::numbers::pi;

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline ComplexMatrix random_real_symmetric(std::size_t num_qubits, std::mt19937_64& rng, double scale = 1.0) {
  const auto d = static_cast<Eigen::Index>(pow2(num_qubits));
  ComplexMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      const double x = scale * uniform(rng);
      m(i, j) = x;
      m(j, i) = x;
    }
  }
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t num_qubits, std::mt19937_64& rng, double scale = 1.0) {
  const auto d = static_cast<Eigen::Index>(pow2(num_qubits));
  ComplexMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    m(i, i) = scale * uniform(rng);
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const Complex z(scale * uniform(rng), scale * uniform(rng));
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

inline StateVector random_state(std::size_t num_qubits, std::mt19937_64& rng) {
  ComplexVector v(static_cast<Eigen::Index>(pow2(num_qubits)));
  std::normal_distribution<double> g;
  for (auto& a : v) a = Complex(g(rng), g(rng));
  v.normalize();
  return StateVector::from_amplitudes(v);
}

inline ComplexMatrix random_unitary(std::size_t num_qubits, std::mt19937_64& rng) {
  const auto d = static_cast<Eigen::Index>(pow2(num_qubits));
  ComplexMatrix m(d, d);
  std::normal_distribution<double> g;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  return qr.householderQ();
}

inline ComplexMatrix pauli(char label) {
  ComplexMatrix p(2, 2);
  const Complex i(0.0, 1.0);
  switch (label) {
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, -i, i, 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: p << 1, 0, 0, 1; break;
  }
  return p;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Sum of explicit Kronecker products, site 0 leftmost.
inline ComplexMatrix naive_operator(const ModelSpec& spec) {
  const auto d = static_cast<Eigen::Index>(pow2(spec.num_sites));
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (const auto& term : spec.terms) {
    ComplexMatrix m = ComplexMatrix::Identity(1, 1);
    for (char c : term.factors) m = kron(m, pauli(c));
    total += term.coefficient * m;
  }
  return total;
}

/// Dense 2^l x 2^l inverse QFT, entries 2^{-l/2} e^{-2 pi i x k / 2^l}.
inline ComplexMatrix inverse_qft_matrix(std::size_t l) {
  const auto d = static_cast<Eigen::Index>(pow2(l));
  ComplexMatrix m(d, d);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index x = 0; x < d; ++x)
      m(k, x) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                           -2.0 * kPi * static_cast<double>(x * k) / static_cast<double>(d));
  return m;
}

/// Full 2^n x 2^n matrix of `u` acting on qubits [first, first + k) of n.
inline ComplexMatrix embed(const ComplexMatrix& u, std::size_t first, std::size_t n) {
  const std::size_t k = qubits_of_dim(static_cast<std::uint64_t>(u.rows()));
  const ComplexMatrix left = ComplexMatrix::Identity(static_cast<Eigen::Index>(pow2(first)),
                                                     static_cast<Eigen::Index>(pow2(first)));
  const std::size_t rest = n - first - k;
  const ComplexMatrix right = ComplexMatrix::Identity(static_cast<Eigen::Index>(pow2(rest)),
                                                      static_cast<Eigen::Index>(pow2(rest)));
  return kron(kron(left, u), right);
}

/// Marginal of qubits [first, first + count) by walking every amplitude.
inline std::vector<double> brute_marginal(const StateVector& s, std::size_t first, std::size_t count) {
  const std::size_t n = s.num_qubits();
  std::vector<double> out(pow2(count), 0.0);
  for (std::uint64_t idx = 0; idx < s.dimension(); ++idx) {
    std::uint64_t r = 0;
    for (std::size_t q = first; q < first + count; ++q) r = (r << 1) | ((idx >> (n - 1 - q)) & 1U);
    out[r] += std::norm(s[idx]);
  }
  return out;
}

/// P(f) from the explicit sum A^f = 2^{-l} sum_x exp(2 pi i (Delta 2^l E / 2 pi - f) x / 2^l),
/// weights indexed (final, initial).
inline std::vector<double> explicit_outcome_sum(const RealVector& energies, const std::vector<std::vector<double>>& w,
                                                std::size_t l, double delta) {
  const std::uint64_t size = pow2(l);
  std::vector<double> p(size, 0.0);
  for (std::size_t n = 0; n < w.size(); ++n) {
    for (std::size_t m = 0; m < w.size(); ++m) {
      if (w[n][m] == 0.0) continue;
      const double gap = energies[static_cast<Eigen::Index>(n)] - energies[static_cast<Eigen::Index>(m)];
      for (std::uint64_t f = 0; f < size; ++f) {
        const double offset = delta * static_cast<double>(size) * gap / (2.0 * kPi) - static_cast<double>(f);
        Complex a = 0.0;
        for (std::uint64_t x = 0; x < size; ++x) {
          a += std::polar(1.0, 2.0 * kPi * offset * static_cast<double>(x) / static_cast<double>(size));
        }
        a /= static_cast<double>(size);
        p[f] += w[n][m] * std::norm(a);
      }
    }
  }
  return p;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double max_abs_diff(const ComplexVector& a, const ComplexVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace qspec::testing
