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

#include <map>

#include "doctest.h"
#include "qspec/errors.hpp"
#include "qspec/models.hpp"
#include "support.hpp"

using namespace qspec;
using namespace qspec::testing;

TEST_SUITE("models") {

TEST_CASE("build_operator examples") {
  const auto zi = build_operator({2, {{1.0, "ZI"}}, "zi"});
  RealVector expected(4);
  expected << 1, 1, -1, -1;
  CHECK((zi.matrix() - ComplexMatrix(expected.asDiagonal())).cwiseAbs().maxCoeff() == 0.0);

  const auto x = build_operator({1, {{1.0, "X"}}, "x"});
  CHECK((x.matrix() - pauli('X')).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("build_operator matches the naive Kronecker construction") {
  ModelSpec tfim{3, {}, "tfim"};
  for (std::size_t i = 0; i + 1 < 3; ++i) tfim.terms.push_back({1.0, std::string(i, 'I') + "ZZ" + std::string(1 - i, 'I')});
  for (std::size_t i = 0; i < 3; ++i) tfim.terms.push_back({1.05, std::string(i, 'I') + "X" + std::string(2 - i, 'I')});
  CHECK((build_operator(tfim).matrix() - naive_operator(tfim)).cwiseAbs().maxCoeff() < 1e-14);

  auto rng = make_rng(21);
  const std::string labels = "IXYZ";
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = uniform_index(rng, 1, 4);
    ModelSpec spec{n, {}, "random"};
    const std::size_t terms = uniform_index(rng, 1, 6);
    for (std::size_t t = 0; t < terms; ++t) {
      std::string s;
      for (std::size_t q = 0; q < n; ++q) s += labels[uniform_index(rng, 0, 3)];
      spec.terms.push_back({uniform(rng, -2, 2), s});
    }
    const auto op = build_operator(spec);
    CHECK((op.matrix() - naive_operator(spec)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(hermiticity_violation(op.matrix()) <= 1e-10);
  }
}

TEST_CASE("Pauli algebra: Z X = i Y on one site") {
  const auto x = build_operator({2, {{1.0, "IX"}}, ""}).matrix();
  const auto z = build_operator({2, {{1.0, "IZ"}}, ""}).matrix();
  const auto y = build_operator({2, {{1.0, "IY"}}, ""}).matrix();
  const Complex i(0.0, 1.0);
  // X then Z (Z X, acting right to left) is i Y; X Z is -i Y.
  CHECK((z * x - i * y).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((x * z + i * y).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(build_operator({2, {{1.0, "Z"}}, "short"}), DimensionError);
  CHECK_THROWS_AS(build_operator({1, {{1.0, "Q"}}, "bad"}), DimensionError);
  CHECK_THROWS_AS(build_operator({1, {}, "empty"}), DimensionError);
  CHECK_THROWS_AS(build_operator({1, {{std::nan(""), "Z"}}, "nan"}), DimensionError);
  CHECK_THROWS_AS(build_operator(total_z_observable(12)), CapacityError);
}

TEST_CASE("total magnetization") {
  CHECK(total_magnetization(1).matrix()(0, 0) == Complex(1.0));
  CHECK(total_magnetization(1).matrix()(1, 1) == Complex(-1.0));
  const RealVector m2 = total_magnetization(2).matrix().diagonal().real();
  CHECK(m2[0] == 2.0);
  CHECK(m2[1] == 0.0);
  CHECK(m2[2] == 0.0);
  CHECK(m2[3] == -2.0);

  std::map<int, int> multiplicity;
  const RealVector m3 = total_magnetization(3).matrix().diagonal().real();
  for (double v : m3) ++multiplicity[static_cast<int>(v)];
  CHECK(multiplicity == std::map<int, int>{{-3, 1}, {-1, 3}, {1, 3}, {3, 1}});

  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK((total_magnetization(n).matrix() - build_operator(total_z_observable(n)).matrix()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("presets") {
  for (const auto& name : preset_names()) {
    for (std::size_t n = 1; n <= 4; ++n) {
      std::map<std::string, double> params;
      if (name == "single_z") params["site"] = static_cast<double>(n - 1);
      const auto spec = preset_model(name, n, params);
      CHECK(spec.num_sites == n);
      const auto op = build_operator(spec);
      CHECK((op.matrix() - naive_operator(spec)).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
  CHECK_THROWS_AS(preset_model("nope", 2), Error);
  CHECK_THROWS_AS(preset_model("tilted_ising", 2, {{"q", 1.0}}), Error);
  CHECK_THROWS_AS(single_site_z_observable(2, 2), DimensionError);

  // Tilted Ising: J ZZ + g X + h Z with defaults (1, 1.05, 0.5).
  const auto ising = tilted_ising_chain(2);
  ModelSpec manual{2, {{1.0, "ZZ"}, {1.05, "XI"}, {0.5, "ZI"}, {1.05, "IX"}, {0.5, "IZ"}}, ""};
  CHECK((build_operator(ising).matrix() - naive_operator(manual)).cwiseAbs().maxCoeff() < 1e-14);

  // Heisenberg: total spin commutes with the chain.
  const auto heis = build_operator(heisenberg_chain(3)).matrix();
  const auto mz = total_magnetization(3).matrix();
  CHECK((heis * mz - mz * heis).cwiseAbs().maxCoeff() < 1e-12);

  const RealVector stag = build_operator(staggered_z_observable(3)).matrix().diagonal().real();
  CHECK(stag[0] == 1.0);  // +1 - 1 + 1
  CHECK(stag[2] == 3.0);  // |010>: +1 + 1 + 1
}

TEST_CASE("synthetic observables") {
  const EigenvalueDistribution gauss{EigenvalueDistribution::Kind::gaussian, 1.0};
  const auto g = synthetic_diagonal_observable(gauss, 8, 101);
  const RealVector gv = g.matrix().diagonal().real();
  CHECK(std::abs(gv.sum()) < 1e-10);
  CHECK(std::abs(gv.squaredNorm() / 256.0 - 1.0) < 0.3);

  const EigenvalueDistribution unif{EigenvalueDistribution::Kind::uniform, 1.0};
  const RealVector uv = synthetic_diagonal_observable(unif, 10, 102).matrix().diagonal().real();
  CHECK(std::abs(uv.array().pow(4).mean() - 0.2) < 0.05 * 0.2);

  const auto again = synthetic_diagonal_observable(gauss, 8, 101);
  CHECK(again.matrix() == g.matrix());
  CHECK(synthetic_diagonal_observable(gauss, 8, 103).matrix() != g.matrix());

  CHECK_THROWS(EigenvalueDistribution{EigenvalueDistribution::Kind::uniform, -1.0}.validate());
  CHECK(EigenvalueDistribution::parse_kind("arcsine") == EigenvalueDistribution::Kind::arcsine);
  CHECK_THROWS_AS(EigenvalueDistribution::parse_kind("cauchy"), Error);
}

TEST_CASE("samplers reproduce the analytic moments of each law") {
  using K = EigenvalueDistribution::Kind;
  auto rng = make_rng(23);
  for (K kind : {K::semicircle, K::uniform, K::arcsine, K::gaussian}) {
    const EigenvalueDistribution law{kind, 1.7};
    double s2 = 0.0, s4 = 0.0;
    const int draws = 400000;
    for (int i = 0; i < draws; ++i) {
      const double x = law.sample(rng);
      s2 += x * x;
      s4 += x * x * x * x;
    }
    CAPTURE(law.name());
    CHECK(std::abs(s2 / draws / law.second_moment() - 1.0) < 0.01);
    CHECK(std::abs(s4 / draws / law.fourth_moment() - 1.0) < 0.03);
  }
}

}  // TEST_SUITE
