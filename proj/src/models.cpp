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

#include "qspec/models.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "qspec/errors.hpp"

namespace qspec {

void ModelSpec::validate() const {
  if (num_sites == 0) throw DimensionError("model '" + name + "' has no sites");
  if (terms.empty()) throw DimensionError("model '" + name + "' has no terms");
  for (const auto& term : terms) {
    if (!std::isfinite(term.coefficient)) {
      throw DimensionError("model '" + name + "': non-finite coefficient");
    }
    if (term.factors.size() != num_sites) {
      throw DimensionError("model '" + name + "': Pauli string '" + term.factors +
                           "' does not have " + std::to_string(num_sites) + " factors");
    }
    if (term.factors.find_first_not_of("IXYZ") != std::string::npos) {
      throw DimensionError("model '" + name + "': bad Pauli label in '" + term.factors + "'");
    }
  }
}

HermitianOperator build_operator(const ModelSpec& spec) {
  if (spec.num_sites > kMaxSystemSites) {
    throw CapacityError("model '" + spec.name + "' has " + std::to_string(spec.num_sites) +
                        " sites, cap is " + std::to_string(kMaxSystemSites));
  }
  spec.validate();
  const std::size_t n = spec.num_sites;
  const auto dim = pow2(n);
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));

  for (const auto& term : spec.terms) {
    // A Pauli string is a signed permutation: column c maps to row c ^ flip,
    // with factor i^{#Y} (-1)^{popcount(c & sign_mask)}.
    std::uint64_t flip = 0;
    std::uint64_t sign_mask = 0;
    int num_y = 0;
    for (std::size_t s = 0; s < n; ++s) {
      const std::uint64_t bit = pow2(n - 1 - s);
      switch (term.factors[s]) {
        case 'X': flip |= bit; break;
        case 'Y': flip |= bit; sign_mask |= bit; ++num_y; break;
        case 'Z': sign_mask |= bit; break;
        default: break;
      }
    }
    static constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex base = term.coefficient * kIPowers[num_y % 4];
    for (std::uint64_t c = 0; c < dim; ++c) {
      const bool odd = std::popcount(c & sign_mask) % 2 == 1;
      m(static_cast<Eigen::Index>(c ^ flip), static_cast<Eigen::Index>(c)) += odd ? -base : base;
    }
  }
  return HermitianOperator(std::move(m));
}

HermitianOperator total_magnetization(std::size_t num_sites) {
  if (num_sites == 0) throw DimensionError("total magnetization needs at least one site");
  if (num_sites > kMaxSystemSites) throw CapacityError("too many sites for a dense observable");
  RealVector diag(static_cast<Eigen::Index>(pow2(num_sites)));
  for (Eigen::Index b = 0; b < diag.size(); ++b) {
    diag[b] = static_cast<double>(num_sites) -
              2.0 * static_cast<double>(std::popcount(static_cast<std::uint64_t>(b)));
  }
  return HermitianOperator::diagonal(diag);
}

namespace {

std::string pauli_at(std::size_t n, std::initializer_list<std::pair<std::size_t, char>> sites) {
  std::string s(n, 'I');
  for (auto [site, label] : sites) s[site] = label;
  return s;
}

}  // namespace

ModelSpec tilted_ising_chain(std::size_t num_sites, double coupling, double transverse,
                             double longitudinal) {
  ModelSpec spec{num_sites, {}, "tilted_ising"};
  for (std::size_t i = 0; i + 1 < num_sites; ++i) {
    spec.terms.push_back({coupling, pauli_at(num_sites, {{i, 'Z'}, {i + 1, 'Z'}})});
  }
  for (std::size_t i = 0; i < num_sites; ++i) {
    spec.terms.push_back({transverse, pauli_at(num_sites, {{i, 'X'}})});
    if (longitudinal != 0.0) spec.terms.push_back({longitudinal, pauli_at(num_sites, {{i, 'Z'}})});
  }
  return spec;
}

ModelSpec heisenberg_chain(std::size_t num_sites, double coupling) {
  ModelSpec spec{num_sites, {}, "heisenberg"};
  for (std::size_t i = 0; i + 1 < num_sites; ++i) {
    for (char p : {'X', 'Y', 'Z'}) {
      spec.terms.push_back({coupling, pauli_at(num_sites, {{i, p}, {i + 1, p}})});
    }
  }
  if (spec.terms.empty()) {
    // A single site has no bonds; keep a valid (zero) operator.
    spec.terms.push_back({0.0, std::string(num_sites, 'I')});
  }
  return spec;
}

ModelSpec total_z_observable(std::size_t num_sites) {
  ModelSpec spec{num_sites, {}, "total_z"};
  for (std::size_t i = 0; i < num_sites; ++i) spec.terms.push_back({1.0, pauli_at(num_sites, {{i, 'Z'}})});
  return spec;
}

ModelSpec single_site_z_observable(std::size_t num_sites, std::size_t site) {
  if (site >= num_sites) throw DimensionError("site index outside the chain");
  return {num_sites, {{1.0, pauli_at(num_sites, {{site, 'Z'}})}}, "single_z"};
}

ModelSpec staggered_z_observable(std::size_t num_sites) {
  ModelSpec spec{num_sites, {}, "staggered_z"};
  for (std::size_t i = 0; i < num_sites; ++i) {
    spec.terms.push_back({i % 2 == 0 ? 1.0 : -1.0, pauli_at(num_sites, {{i, 'Z'}})});
  }
  return spec;
}

std::vector<std::string> preset_names() {
  return {"tilted_ising", "transverse_ising", "heisenberg", "total_z", "single_z", "staggered_z"};
}

ModelSpec preset_model(std::string_view name, std::size_t num_sites,
                       const std::map<std::string, double>& params) {
  auto param = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  auto allow = [&](std::initializer_list<std::string_view> keys) {
    for (const auto& [key, value] : params) {
      bool known = false;
      for (auto k : keys) known = known || key == k;
      if (!known) throw Error("preset '" + std::string(name) + "' has no parameter '" + key + "'");
    }
  };
  if (num_sites == 0) throw DimensionError("preset needs at least one site");

  if (name == "tilted_ising") {
    allow({"J", "g", "h"});
    return tilted_ising_chain(num_sites, param("J", 1.0), param("g", 1.05), param("h", 0.5));
  }
  if (name == "transverse_ising") {
    allow({"J", "g"});
    auto spec = tilted_ising_chain(num_sites, param("J", 1.0), param("g", 1.05), 0.0);
    spec.name = "transverse_ising";
    return spec;
  }
  if (name == "heisenberg") {
    allow({"J"});
    return heisenberg_chain(num_sites, param("J", 1.0));
  }
  if (name == "total_z") {
    allow({});
    return total_z_observable(num_sites);
  }
  if (name == "single_z") {
    allow({"site"});
    const double site = param("site", 0.0);
    if (site < 0 || site != std::floor(site)) throw Error("single_z site must be a non-negative integer");
    return single_site_z_observable(num_sites, static_cast<std::size_t>(site));
  }
  if (name == "staggered_z") {
    allow({});
    return staggered_z_observable(num_sites);
  }
  throw Error("unknown preset '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Eigenvalue laws
// ---------------------------------------------------------------------------

void EigenvalueDistribution::validate() const {
  if (!(parameter > 0.0) || !std::isfinite(parameter)) {
    throw DimensionError("distribution parameter must be positive and finite");
  }
}

double EigenvalueDistribution::sample(std::mt19937_64& rng) const {
  switch (kind) {
    case Kind::semicircle: {
      // Projection of a uniform point in the disk of radius R.
      std::uniform_real_distribution<double> u(-parameter, parameter);
      for (;;) {
        const double x = u(rng);
        const double y = u(rng);
        if (x * x + y * y <= parameter * parameter) return x;
      }
    }
    case Kind::uniform:
      return std::uniform_real_distribution<double>(-parameter, parameter)(rng);
    case Kind::arcsine:
      return parameter * std::cos(std::numbers::pi * std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    case Kind::gaussian:
      return std::normal_distribution<double>(0.0, parameter)(rng);
  }
  return 0.0;
}

double EigenvalueDistribution::second_moment() const {
  const double p2 = parameter * parameter;
  switch (kind) {
    case Kind::semicircle: return p2 / 4.0;
    case Kind::uniform: return p2 / 3.0;
    case Kind::arcsine: return p2 / 2.0;
    case Kind::gaussian: return p2;
  }
  return 0.0;
}

double EigenvalueDistribution::fourth_moment() const {
  const double p4 = std::pow(parameter, 4);
  switch (kind) {
    case Kind::semicircle: return p4 / 8.0;
    case Kind::uniform: return p4 / 5.0;
    case Kind::arcsine: return 3.0 * p4 / 8.0;
    case Kind::gaussian: return 3.0 * p4;
  }
  return 0.0;
}

std::string EigenvalueDistribution::name() const {
  switch (kind) {
    case Kind::semicircle: return "semicircle";
    case Kind::uniform: return "uniform";
    case Kind::arcsine: return "arcsine";
    case Kind::gaussian: return "gaussian";
  }
  return "?";
}

EigenvalueDistribution::Kind EigenvalueDistribution::parse_kind(std::string_view name) {
  if (name == "semicircle") return Kind::semicircle;
  if (name == "uniform") return Kind::uniform;
  if (name == "arcsine") return Kind::arcsine;
  if (name == "gaussian") return Kind::gaussian;
  throw Error("unknown eigenvalue distribution '" + std::string(name) + "'");
}

HermitianOperator synthetic_diagonal_observable(const EigenvalueDistribution& dist,
                                                std::size_t num_sites, std::uint64_t seed) {
  dist.validate();
  if (num_sites > kMaxSystemSites) throw CapacityError("too many sites for a dense observable");
  std::mt19937_64 rng(seed);
  RealVector values(static_cast<Eigen::Index>(pow2(num_sites)));
  for (Eigen::Index i = 0; i < values.size(); ++i) values[i] = dist.sample(rng);
  values.array() -= values.mean();
  return HermitianOperator::diagonal(values);
}

}  // namespace qspec
