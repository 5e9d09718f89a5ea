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

#include <numeric>

#include "doctest.h"
#include "qspec/errors.hpp"
#include "qspec/models.hpp"
#include "qspec/oracle.hpp"
#include "qspec/purify.hpp"
#include "support.hpp"

using namespace qspec;
using namespace qspec::testing;

namespace {

/// Tr[rho e^{iHt} O e^{-iHt} O] with dense matrix exponentials.
Complex dense_correlation(const HermitianOperator& h, const HermitianOperator& o, double t, const ComplexMatrix& rho) {
  const auto e = eig_hermitian(h);
  const ComplexMatrix u = evolution_operator(e, t, TimeDirection::forward);
  return (rho * u * o.matrix() * u.adjoint() * o.matrix()).trace();
}

ComplexMatrix gibbs_density(const HermitianOperator& h, double beta) {
  const auto e = eig_hermitian(h);
  std::vector<Complex> w(e.dim());
  double z = 0.0;
  for (std::size_t n = 0; n < e.dim(); ++n) {
    w[n] = std::exp(-beta * e.eigenvalues[static_cast<Eigen::Index>(n)]);
    z += w[n].real();
  }
  return spectral_matrix(e, w) / z;
}

double sinc_sq(double x) {
  if (x == 0.0) return 1.0;
  const double s = std::sin(kPi * x) / (kPi * x);
  return s * s;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("correlation function examples") {
  auto rng = make_rng(61);
  const HermitianOperator h{random_real_symmetric(2, rng)};
  const HermitianOperator o{random_real_symmetric(2, rng)};
  const double o2 = (o.matrix() * o.matrix()).trace().real() / 4.0;
  CHECK(std::abs(correlation_function(h, o, 0.0) - o2) < 1e-12);

  for (double t : {0.0, 0.3, 1.7, -2.2}) {
    CHECK(std::abs(correlation_function(HermitianOperator{pauli('Z')}, HermitianOperator{pauli('X')}, t) - std::cos(2 * t)) < 1e-12);
    CHECK(std::abs(correlation_function(h, o, -t) - std::conj(correlation_function(h, o, t))) < 1e-12);
  }
}

TEST_CASE("correlation function equals the dense thermal trace") {
  auto rng = make_rng(62);
  for (int trial = 0; trial < 4; ++trial) {
    const HermitianOperator h{random_hermitian(2, rng)};
    const HermitianOperator o{random_hermitian(2, rng)};
    const auto e = eig_hermitian(h);
    const ComplexMatrix ground = e.eigenvectors.col(0) * e.eigenvectors.col(0).adjoint();
    for (double t : {0.4, 3.1}) {
      CHECK(std::abs(correlation_function(h, o, t) - dense_correlation(h, o, t, ComplexMatrix::Identity(4, 4) / 4.0)) < 1e-12);
      CHECK(std::abs(correlation_function(h, o, t, EnsembleSpec::gibbs(0.7)) - dense_correlation(h, o, t, gibbs_density(h, 0.7))) < 1e-12);
      CHECK(std::abs(correlation_function(h, o, t, EnsembleSpec::ground_state()) - dense_correlation(h, o, t, ground)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(correlation_function(HermitianOperator{pauli('Z')}, build_operator(total_z_observable(2)), 0.1),
                  DimensionError);
}

TEST_CASE("spectral function closed forms") {
  const double gamma = 0.3;
  const std::vector<double> grid{-3.0, -2.0, -0.5, 0.0, 1.9, 2.0, 4.0};
  const auto table = spectral_function(HermitianOperator{pauli('Z')}, HermitianOperator{pauli('X')}, grid, gamma);
  CHECK(table.gamma == gamma);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid[i];
    const double expected =
        0.5 * (gamma / (gamma * gamma + (w - 2) * (w - 2)) + gamma / (gamma * gamma + (w + 2) * (w + 2)));
    CHECK(std::abs(table.values[i] - expected) < 1e-14);
  }

  // Commuting observable: one Lorentzian at zero with weight <O^2>.
  RealVector hd(4), od(4);
  hd << -1.0, 0.2, 0.7, 1.5;
  od << 0.5, -1.0, 2.0, 0.0;
  const auto flat = spectral_function(HermitianOperator::diagonal(hd), HermitianOperator::diagonal(od), grid, gamma);
  const double o2 = od.squaredNorm() / 4.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(flat.values[i] - o2 * gamma / (gamma * gamma + grid[i] * grid[i])) < 1e-14);
  }
  CHECK_THROWS_AS(spectral_function(HermitianOperator{pauli('Z')}, HermitianOperator{pauli('X')}, grid, 0.0), ArgumentError);
}

TEST_CASE("spectral function matches quadrature of the correlation function") {
  auto rng = make_rng(63);
  const HermitianOperator h{random_real_symmetric(2, rng)};
  const HermitianOperator o{random_real_symmetric(2, rng)};
  const double gamma = 0.5;
  const std::vector<double> grid{-1.3, 0.0, 0.45, 2.0};
  for (auto ens : {EnsembleSpec::infinite_temperature(), EnsembleSpec::gibbs(1.0)}) {
    const auto table = spectral_function(h, o, grid, gamma, ens);
    // Trapezoid on [0, 40 / gamma]; S(t) from the dense trace.
    const ComplexMatrix rho = ens.kind == EnsembleSpec::Kind::gibbs ? gibbs_density(h, ens.beta)
                                                                    : ComplexMatrix(ComplexMatrix::Identity(4, 4) / 4.0);
    const double t_max = 40.0 / gamma;
    const int steps = 200000;
    const double dt = t_max / steps;
    // Precompute S on the grid once.
    const auto e = eig_hermitian(h);
    const ComplexMatrix m = e.eigenvectors.adjoint() * o.matrix() * e.eigenvectors;
    const ComplexMatrix rho_e = e.eigenvectors.adjoint() * rho * e.eigenvectors;
    std::vector<Complex> s(steps + 1);
    for (int k = 0; k <= steps; ++k) {
      const double t = k * dt;
      Complex acc = 0.0;
      for (Eigen::Index a = 0; a < 4; ++a)
        for (Eigen::Index b = 0; b < 4; ++b)
          acc += rho_e(a, a) * std::norm(m(a, b)) * std::polar(1.0, (e.eigenvalues[a] - e.eigenvalues[b]) * t);
      s[k] = acc;
    }
    CHECK(std::abs(s[1234] - correlation_function(h, o, 1234 * dt, ens)) < 1e-12);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double integral = 0.0;
      for (int k = 0; k <= steps; ++k) {
        const double t = k * dt;
        const double f = (std::polar(std::exp(-gamma * t), grid[i] * t) * s[k]).real();
        integral += (k == 0 || k == steps) ? 0.5 * f : f;
      }
      integral *= dt;
      CAPTURE(grid[i]);
      CHECK(std::abs(integral - table.values[i]) < 1e-6);
    }
  }
}

TEST_CASE("golden rule weights") {
  const auto w = golden_rule_weights(HermitianOperator{pauli('Z')}, HermitianOperator{pauli('X')});
  CHECK(std::abs(w.weights(0, 0)) < 1e-15);
  CHECK(std::abs(w.weights(0, 1) - 0.5) < 1e-14);
  CHECK(std::abs(w.weights(1, 0) - 0.5) < 1e-14);
  CHECK_FALSE(w.differs);

  RealVector hd(4), od(4);
  hd << -1.0, 0.2, 0.7, 1.5;
  od << 0.5, -1.0, 2.0, 0.0;
  const auto diag = golden_rule_weights(HermitianOperator::diagonal(hd), HermitianOperator::diagonal(od));
  for (Eigen::Index n = 0; n < 4; ++n) CHECK(std::abs(diag.weights(n, n) - od[n] * od[n] / od.squaredNorm()) < 1e-14);

  CHECK_THROWS_AS(golden_rule_weights(HermitianOperator{pauli('Z')}, HermitianOperator::zero(1)), ZeroNormError);
}

TEST_CASE("golden rule weights: symmetry, normalization and purification identity") {
  auto rng = make_rng(64);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const HermitianOperator h{random_real_symmetric(n, rng)};
    const HermitianOperator o{random_real_symmetric(n, rng)};
    const auto w = golden_rule_weights(h, o);
    CHECK((w.weights - w.weights.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(w.weights.sum() - 1.0) < 1e-10);
    CHECK(w.weights.minCoeff() >= 0.0);
    CHECK((w.weights - w.operational).cwiseAbs().maxCoeff() < 1e-10);

    // |c_nm|^2 read off the purified state itself.
    const auto e = eig_hermitian(h);
    const ComplexMatrix c = e.eigenvectors.adjoint() * pair_matrix(purify_operator(o)) * e.eigenvectors.conjugate();
    CHECK((c.cwiseAbs2() - w.weights).cwiseAbs().maxCoeff() < 1e-10);

    for (auto ens : {EnsembleSpec::ground_state(), EnsembleSpec::gibbs(0.9)}) {
      const auto t = golden_rule_weights(h, o, ens);
      CHECK(std::abs(t.weights.sum() - 1.0) < 1e-10);
      CHECK(std::abs(t.operational.sum() - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("complex inputs report both weight forms") {
  auto rng = make_rng(65);
  const HermitianOperator h{random_hermitian(2, rng)};
  const HermitianOperator o{random_hermitian(2, rng)};
  const auto w = golden_rule_weights(h, o);
  CHECK(w.differs);
  CHECK(std::abs(w.weights.sum() - 1.0) < 1e-10);
  CHECK(std::abs(w.operational.sum() - 1.0) < 1e-10);
}

TEST_CASE("qpe kernel") {
  CHECK(qpe_kernel(0.0, 0, 4, 0.3) == doctest::Approx(1.0));
  // delta energy 2 pi / (Delta 2^l) * 3 puts the offset at integer 3 - f.
  const double delta = 0.3;
  const double unit = 2 * kPi / (delta * 16);
  CHECK(qpe_kernel(3 * unit, 3, 4, delta) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(qpe_kernel(3 * unit, 5, 4, delta) < 1e-24);
  CHECK(fejer_kernel(0.5, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(fejer_kernel(16.0, 4) == doctest::Approx(1.0));
  CHECK(fejer_kernel(1e-10, 4) == doctest::Approx(1.0));
  CHECK(std::abs(fejer_kernel(1e-7, 5) - fejer_kernel(-1e-7, 5)) < 1e-15);
  CHECK_THROWS_AS(qpe_kernel(0.0, 16, 4, 1.0), ArgumentError);

  // Continuity across the guarded region.
  for (double x : {1e-9, 1e-8, 1e-7, 1e-6}) {
    CHECK(std::abs(fejer_kernel(x, 6) - fejer_kernel(x * 1.0001, 6)) < 1e-9);
  }
}

TEST_CASE("kernel bound and normalization") {
  for (std::size_t l = 1; l <= 8; ++l) {
    const double size = static_cast<double>(pow2(l));
    const int steps = static_cast<int>(2 * size / 0.01);
    for (int k = 0; k <= steps; ++k) {
      const double d = -size + 0.01 * k;
      CHECK(fejer_kernel(d, l) >= sinc_sq(d) - 1e-12);
    }
    auto rng = make_rng(66 + l);
    for (int trial = 0; trial < 5; ++trial) {
      const double energy = uniform(rng, -5, 5);
      double total = 0.0;
      for (std::uint64_t f = 0; f < pow2(l); ++f) total += qpe_kernel(energy, f, l, 0.37);
      CHECK(std::abs(total - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("exact outcome distribution") {
  auto rng = make_rng(67);
  const HermitianOperator o{random_real_symmetric(2, rng)};
  const auto zero = exact_outcome_distribution(HermitianOperator::zero(2), o, 4, 0.5);
  CHECK(std::abs(zero.probabilities[0] - 1.0) < 1e-12);

  const auto two = exact_outcome_distribution(HermitianOperator{pauli('Z')}, HermitianOperator{pauli('X')}, 3, kPi / 4);
  CHECK(std::abs(two.probabilities[2] - 0.5) < 1e-12);
  CHECK(std::abs(two.probabilities[6] - 0.5) < 1e-12);

  const HermitianOperator h{random_real_symmetric(3, rng)};
  const HermitianOperator o3{random_real_symmetric(3, rng)};
  const auto dist = exact_outcome_distribution(h, o3, 5, 0.4);
  CHECK(std::abs(std::accumulate(dist.probabilities.begin(), dist.probabilities.end(), 0.0) - 1.0) < 1e-10);
  CHECK(max_abs_diff(dist.probabilities, run_qpe(purify_operator(o3), h, 5, 0.4).probabilities) < 1e-10);
  CHECK_THROWS_AS(exact_outcome_distribution(h, o3, 5, 0.0), ArgumentError);
}

TEST_CASE("oracle matches the circuit for every ensemble and complex inputs") {
  auto rng = make_rng(68);
  for (int trial = 0; trial < 9; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const bool complex_inputs = trial % 2 == 1;
    const HermitianOperator h{complex_inputs ? random_hermitian(n, rng) : random_real_symmetric(n, rng)};
    const HermitianOperator o{complex_inputs ? random_hermitian(n, rng) : random_real_symmetric(n, rng)};
    const auto e = eig_hermitian(h);
    for (auto ens : {EnsembleSpec::infinite_temperature(), EnsembleSpec::ground_state(), EnsembleSpec::gibbs(1.5)}) {
      const auto state = thermal_operator_state(o, e, ens);
      const auto circuit = run_qpe(state, e, 4, 0.35);
      const auto oracle = exact_outcome_distribution(e, o, 4, 0.35, ens);
      CHECK(max_abs_diff(circuit.probabilities, oracle.probabilities) < 1e-10);
    }
  }
}

TEST_CASE("spectral peaks line up with outcome maxima") {
  const auto h = build_operator(tilted_ising_chain(3));
  const auto o = build_operator(total_z_observable(3));
  const auto e = eig_hermitian(h);
  const std::size_t l = 7;
  const double width = e.eigenvalues.maxCoeff() - e.eigenvalues.minCoeff();
  const double delta = kPi / (1.1 * width);
  const double gamma = 2 * kPi / (delta * static_cast<double>(pow2(l)));
  const auto p = exact_outcome_distribution(e, o, l, delta).probabilities;
  std::vector<double> grid;
  for (std::uint64_t f = 0; f < pow2(l); ++f) grid.push_back(outcome_frequency(f, l, delta));
  const auto sigma = spectral_function(e, o, grid, gamma).values;
  const auto size = static_cast<std::int64_t>(pow2(l));
  auto at = [&](const std::vector<double>& v, std::int64_t f) { return v[static_cast<std::size_t>(((f % size) + size) % size)]; };
  // Every strong local maximum of Sigma on the bin grid has a P(f) maximum within one bin.
  for (std::int64_t f = 0; f < size; ++f) {
    if (!(at(sigma, f) > at(sigma, f - 1) && at(sigma, f) >= at(sigma, f + 1))) continue;
    if (at(sigma, f) * gamma < 0.05) continue;
    bool found = false;
    for (std::int64_t g = f - 1; g <= f + 1; ++g) found |= at(p, g) >= at(p, g - 1) && at(p, g) >= at(p, g + 1);
    CAPTURE(f);
    CHECK(found);
  }
}

TEST_CASE("spectral lines merge equal gaps") {
  RealMatrix w(2, 2);
  w << 0.1, 0.4, 0.4, 0.1;
  RealVector e(2);
  e << -1.0, 1.0;
  const auto lines = spectral_lines(w, e);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].omega == doctest::Approx(-2.0));
  CHECK(lines[1].omega == doctest::Approx(0.0));
  CHECK(lines[1].weight == doctest::Approx(0.2));
  CHECK(lines[2].weight == doctest::Approx(0.4));
}

TEST_CASE("distribution distance") {
  const std::vector<double> p{1.0, 0.0}, q{0.0, 1.0};
  CHECK(distribution_distance(p, p, DistanceMetric::total_variation) == 0.0);
  CHECK(distribution_distance(p, q, DistanceMetric::total_variation) == 1.0);
  CHECK(distribution_distance(p, q, DistanceMetric::max_abs) == 1.0);
  const std::vector<double> three{0.2, 0.3, 0.5};
  CHECK_THROWS_AS(distribution_distance(p, three, DistanceMetric::max_abs), DimensionError);

  auto rng = make_rng(69);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(8), b(8);
    for (auto& x : a) x = uniform(rng, 0, 1);
    for (auto& x : b) x = uniform(rng, 0, 1);
    const double sa = std::accumulate(a.begin(), a.end(), 0.0), sb = std::accumulate(b.begin(), b.end(), 0.0);
    for (auto& x : a) x /= sa;
    for (auto& x : b) x /= sb;
    const double ab = distribution_distance(a, b, DistanceMetric::total_variation);
    CHECK(ab == doctest::Approx(distribution_distance(b, a, DistanceMetric::total_variation)));
    CHECK(ab <= 1.0);
    CHECK(distribution_distance(a, b, DistanceMetric::max_abs) <= 2 * ab + 1e-15);
  }
}

}  // TEST_SUITE
