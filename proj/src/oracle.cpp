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

#include "qspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qspec/errors.hpp"

namespace qspec {

namespace {

constexpr double kPi = std::numbers::pi;

void check_pair(const EigenDecomposition& hamiltonian, const HermitianOperator& op) {
  if (hamiltonian.dim() != op.dim()) throw DimensionError("Hamiltonian and observable dimensions differ");
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

/// <E_n|O|E_m>.
ComplexMatrix eigenbasis_elements(const EigenDecomposition& hamiltonian, const HermitianOperator& op) {
  return hamiltonian.eigenvectors.adjoint() * op.matrix() * hamiltonian.eigenvectors;
}

double thermal_second_moment(const ComplexMatrix& elements, const RealVector& populations) {
  double total = 0.0;
  for (Eigen::Index m = 0; m < elements.cols(); ++m) {
    total += populations[m] * elements.col(m).squaredNorm();
  }
  return total;
}

}  // namespace

RealVector ensemble_populations(const EigenDecomposition& hamiltonian, const EnsembleSpec& ensemble) {
  ensemble.validate();
  const auto d = static_cast<Eigen::Index>(hamiltonian.dim());
  RealVector p = RealVector::Zero(d);
  switch (ensemble.kind) {
    case EnsembleSpec::Kind::infinite_temperature:
      p.setConstant(1.0 / static_cast<double>(d));
      break;
    case EnsembleSpec::Kind::ground_state:
      p[0] = 1.0;
      break;
    case EnsembleSpec::Kind::gibbs: {
      const double e0 = hamiltonian.eigenvalues.minCoeff();
      for (Eigen::Index n = 0; n < d; ++n) p[n] = std::exp(-ensemble.beta * (hamiltonian.eigenvalues[n] - e0));
      p /= p.sum();
      break;
    }
  }
  return p;
}

Complex correlation_function(const EigenDecomposition& hamiltonian, const HermitianOperator& op, double t,
                             const EnsembleSpec& ensemble) {
  check_pair(hamiltonian, op);
  const ComplexMatrix elements = eigenbasis_elements(hamiltonian, op);
  const RealVector p = ensemble_populations(hamiltonian, ensemble);
  const auto& e = hamiltonian.eigenvalues;
  Complex total = 0.0;
  for (Eigen::Index n = 0; n < e.size(); ++n) {
    if (p[n] == 0.0) continue;
    for (Eigen::Index m = 0; m < e.size(); ++m) {
      total += p[n] * std::norm(elements(n, m)) * std::polar(1.0, (e[n] - e[m]) * t);
    }
  }
  return total;
}

Complex correlation_function(const HermitianOperator& hamiltonian, const HermitianOperator& op, double t,
                             const EnsembleSpec& ensemble) {
  return correlation_function(eig_hermitian(hamiltonian), op, t, ensemble);
}

SpectrumTable spectral_function(const EigenDecomposition& hamiltonian, const HermitianOperator& op,
                                std::span<const double> omega_grid, double gamma, const EnsembleSpec& ensemble) {
  check_pair(hamiltonian, op);
  if (!(gamma > 0.0)) throw ArgumentError("linewidth gamma must be positive");
  const ComplexMatrix elements = eigenbasis_elements(hamiltonian, op);
  const RealVector p = ensemble_populations(hamiltonian, ensemble);
  const auto& e = hamiltonian.eigenvalues;

  // Lorentzian centres eps_m - eps_n with weight p_n |O_nm|^2.
  std::vector<SpectralLine> terms;
  for (Eigen::Index n = 0; n < e.size(); ++n) {
    if (p[n] == 0.0) continue;
    for (Eigen::Index m = 0; m < e.size(); ++m) {
      const double w = p[n] * std::norm(elements(n, m));
      if (w > 0.0) terms.push_back({e[m] - e[n], w});
    }
  }

  SpectrumTable out;
  out.gamma = gamma;
  out.ensemble = ensemble;
  out.frequencies.assign(omega_grid.begin(), omega_grid.end());
  out.values.reserve(omega_grid.size());
  const double g2 = gamma * gamma;
  for (double omega : omega_grid) {
    double s = 0.0;
    for (const auto& term : terms) {
      const double x = omega - term.omega;
      s += term.weight * gamma / (g2 + x * x);
    }
    out.values.push_back(s);
  }
  return out;
}

SpectrumTable spectral_function(const HermitianOperator& hamiltonian, const HermitianOperator& op,
                                std::span<const double> omega_grid, double gamma, const EnsembleSpec& ensemble) {
  return spectral_function(eig_hermitian(hamiltonian), op, omega_grid, gamma, ensemble);
}

GoldenRuleWeights golden_rule_weights(const EigenDecomposition& hamiltonian, const HermitianOperator& op,
                                      const EnsembleSpec& ensemble) {
  check_pair(hamiltonian, op);
  const ComplexMatrix elements = eigenbasis_elements(hamiltonian, op);
  const RealVector p = ensemble_populations(hamiltonian, ensemble);
  const double norm = thermal_second_moment(elements, p);
  if (!(norm > 1e-24)) throw ZeroNormError("observable has no weight in this ensemble");

  GoldenRuleWeights out;
  out.energies = hamiltonian.eigenvalues;
  out.weights = elements.cwiseAbs2();
  for (Eigen::Index m = 0; m < out.weights.cols(); ++m) out.weights.col(m) *= p[m] / norm;

  // Purified state (O (x) 1) sum_m sqrt(p_m) |E_m>|E_m*>, read off in the
  // |E_n>|E_m*> product basis: c = V^dag O V diag(sqrt p) V^dag conj(V).
  const ComplexMatrix& v = hamiltonian.eigenvectors;
  const ComplexMatrix overlap = v.adjoint() * v.conjugate();
  const ComplexMatrix c = elements * p.cwiseSqrt().asDiagonal() * overlap;
  out.operational = c.cwiseAbs2() / norm;
  out.differs = (out.operational - out.weights).cwiseAbs().maxCoeff() > 1e-10;
  return out;
}

GoldenRuleWeights golden_rule_weights(const HermitianOperator& hamiltonian, const HermitianOperator& op,
                                      const EnsembleSpec& ensemble) {
  return golden_rule_weights(eig_hermitian(hamiltonian), op, ensemble);
}

std::vector<SpectralLine> spectral_lines(const RealMatrix& weights, const RealVector& energies,
                                         double merge_tolerance) {
  if (weights.rows() != energies.size() || weights.cols() != energies.size()) {
    throw DimensionError("weight matrix does not match the energy list");
  }
  std::vector<SpectralLine> raw;
  for (Eigen::Index n = 0; n < weights.rows(); ++n) {
    for (Eigen::Index m = 0; m < weights.cols(); ++m) {
      if (weights(n, m) > 0.0) raw.push_back({energies[n] - energies[m], weights(n, m)});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const SpectralLine& a, const SpectralLine& b) { return a.omega < b.omega; });
  std::vector<SpectralLine> merged;
  double anchor = 0.0;
  for (const auto& line : raw) {
    if (!merged.empty() && line.omega - anchor <= merge_tolerance) {
      auto& last = merged.back();
      last.omega = (last.omega * last.weight + line.omega * line.weight) / (last.weight + line.weight);
      last.weight += line.weight;
    } else {
      merged.push_back(line);
      anchor = line.omega;
    }
  }
  return merged;
}

double fejer_kernel(double offset, std::size_t l) {
  if (l == 0 || l > 62) throw ArgumentError("phase register size out of range");
  const double size = static_cast<double>(pow2(l));
  const double eta = std::remainder(offset, size);
  const double denom = std::sin(kPi * eta / size);
  if (std::abs(denom) < 1e-8) {
    const double r = sinc(eta) / sinc(eta / size);
    return r * r;
  }
  const double num = std::sin(kPi * eta);
  return num * num / (size * size * denom * denom);
}

double qpe_kernel(double delta_energy, std::uint64_t f, std::size_t l, double delta) {
  if (l == 0 || l > 62) throw ArgumentError("phase register size out of range");
  if (f >= pow2(l)) throw ArgumentError("outcome " + std::to_string(f) + " outside the register");
  const double size = static_cast<double>(pow2(l));
  return fejer_kernel(delta * size * delta_energy / (2.0 * kPi) - static_cast<double>(f), l);
}

PhaseDistribution exact_outcome_distribution(const EigenDecomposition& hamiltonian, const HermitianOperator& op,
                                             std::size_t l, double delta, const EnsembleSpec& ensemble) {
  if (l == 0 || l > 30) throw ArgumentError("phase register size out of range");
  if (!(delta > 0.0)) throw ArgumentError("coupling time delta must be positive");
  const auto weights = golden_rule_weights(hamiltonian, op, ensemble);
  const auto& e = hamiltonian.eigenvalues;
  PhaseDistribution out;
  out.l = l;
  out.delta = delta;
  out.kind = PhaseDistribution::Kind::exact;
  out.probabilities.assign(pow2(l), 0.0);
  for (Eigen::Index n = 0; n < e.size(); ++n) {
    for (Eigen::Index m = 0; m < e.size(); ++m) {
      const double w = weights.operational(n, m);
      if (w == 0.0) continue;
      for (std::uint64_t f = 0; f < out.probabilities.size(); ++f) {
        out.probabilities[f] += w * qpe_kernel(e[n] - e[m], f, l, delta);
      }
    }
  }
  return out;
}

PhaseDistribution exact_outcome_distribution(const HermitianOperator& hamiltonian, const HermitianOperator& op,
                                             std::size_t l, double delta, const EnsembleSpec& ensemble) {
  return exact_outcome_distribution(eig_hermitian(hamiltonian), op, l, delta, ensemble);
}

double distribution_distance(std::span<const double> p, std::span<const double> q, DistanceMetric metric) {
  if (p.size() != q.size()) throw DimensionError("distributions have different lengths");
  double sum = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = std::abs(p[i] - q[i]);
    sum += d;
    worst = std::max(worst, d);
  }
  return metric == DistanceMetric::total_variation ? 0.5 * sum : worst;
}

}  // namespace qspec
