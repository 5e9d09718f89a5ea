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

#include "qspec/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qspec/errors.hpp"
#include "qspec/export.hpp"
#include "qspec/random.hpp"
#include "qspec/stateprep.hpp"

namespace qspec {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

void require_object(const json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "expected an object");
}

void check_keys(const json& node, const std::string& path, std::initializer_list<std::string_view> allowed) {
  require_object(node, path);
  for (const auto& [key, value] : node.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(path + "." + key, "unknown field");
    }
  }
}

double read_number(const json& node, const std::string& path) {
  if (!node.is_number()) fail(path, "expected a number");
  const double x = node.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

std::uint64_t read_unsigned(const json& node, const std::string& path) {
  if (node.is_number_unsigned()) return node.get<std::uint64_t>();
  if (node.is_number_integer()) fail(path, "must be a non-negative integer");
  fail(path, "expected an integer");
}

std::string read_string(const json& node, const std::string& path) {
  if (!node.is_string()) fail(path, "expected a string");
  return node.get<std::string>();
}

bool read_bool(const json& node, const std::string& path) {
  if (!node.is_boolean()) fail(path, "expected true or false");
  return node.get<bool>();
}

std::map<std::string, double> read_params(const json& node, const std::string& path) {
  require_object(node, path);
  std::map<std::string, double> out;
  for (const auto& [key, value] : node.items()) out[key] = read_number(value, path + "." + key);
  return out;
}

ModelSpec checked(ModelSpec spec, const std::string& path) {
  try {
    spec.validate();
  } catch (const Error& e) {
    fail(path, e.what());
  }
  if (spec.num_sites > kMaxSystemSites) {
    throw CapacityError(path + ": " + std::to_string(spec.num_sites) + " sites exceed the limit of " +
                        std::to_string(kMaxSystemSites));
  }
  return spec;
}

ModelSpec read_preset(const std::string& name, std::size_t num_sites, const std::map<std::string, double>& params,
                      const std::string& path) {
  try {
    return preset_model(name, num_sites, params);
  } catch (const CapacityError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

/// `default_sites` = 0 means num_sites is required.
ModelSpec read_model(const json& node, const std::string& path, std::size_t default_sites) {
  if (node.is_string()) {
    if (default_sites == 0) fail(path, "a bare preset name needs num_sites; use an object");
    return checked(read_preset(node.get<std::string>(), default_sites, {}, path), path);
  }
  require_object(node, path);
  std::size_t num_sites = default_sites;
  if (node.contains("num_sites")) {
    num_sites = static_cast<std::size_t>(read_unsigned(node["num_sites"], path + ".num_sites"));
    if (num_sites == 0) fail(path + ".num_sites", "must be at least 1");
    if (default_sites != 0 && num_sites != default_sites) {
      fail(path + ".num_sites", "must match the model (" + std::to_string(default_sites) + " sites)");
    }
  } else if (default_sites == 0) {
    fail(path + ".num_sites", "required");
  }

  if (node.contains("preset")) {
    check_keys(node, path, {"preset", "num_sites", "params"});
    std::map<std::string, double> params;
    if (node.contains("params")) params = read_params(node["params"], path + ".params");
    return checked(read_preset(read_string(node["preset"], path + ".preset"), num_sites, params, path), path);
  }

  check_keys(node, path, {"name", "num_sites", "terms"});
  ModelSpec spec;
  spec.num_sites = num_sites;
  spec.name = node.contains("name") ? read_string(node["name"], path + ".name") : "custom";
  if (!node.contains("terms")) fail(path, "needs either 'preset' or 'terms'");
  const auto& terms = node["terms"];
  if (!terms.is_array()) fail(path + ".terms", "expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string term_path = path + ".terms[" + std::to_string(i) + "]";
    check_keys(terms[i], term_path, {"coefficient", "paulis"});
    if (!terms[i].contains("paulis")) fail(term_path + ".paulis", "required");
    PauliTerm term;
    term.factors = read_string(terms[i]["paulis"], term_path + ".paulis");
    if (terms[i].contains("coefficient")) term.coefficient = read_number(terms[i]["coefficient"], term_path + ".coefficient");
    spec.terms.push_back(std::move(term));
  }
  return checked(std::move(spec), path);
}

EnsembleSpec read_ensemble(const json& node, const std::string& path) {
  check_keys(node, path, {"kind", "beta"});
  EnsembleSpec out;
  if (node.contains("kind")) {
    try {
      out.kind = EnsembleSpec::parse_kind(read_string(node["kind"], path + ".kind"));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail(path + ".kind", e.what());
    }
  }
  if (out.kind == EnsembleSpec::Kind::gibbs) {
    if (!node.contains("beta")) fail(path + ".beta", "required for the gibbs ensemble");
    out.beta = read_number(node["beta"], path + ".beta");
    if (out.beta < 0.0) fail(path + ".beta", "must be >= 0");
  } else if (node.contains("beta")) {
    fail(path + ".beta", "only applies to the gibbs ensemble");
  }
  return out;
}

PrepConfig read_prep(const json& node, const std::string& path) {
  check_keys(node, path, {"mode", "epsilon", "max_attempts", "phi"});
  PrepConfig out;
  if (node.contains("mode")) {
    const auto mode = read_string(node["mode"], path + ".mode");
    if (mode == "exact") {
      out.mode = PrepConfig::Mode::exact;
    } else if (mode == "circuit") {
      out.mode = PrepConfig::Mode::circuit;
    } else {
      fail(path + ".mode", "expected 'exact' or 'circuit', got '" + mode + "'");
    }
  }
  if (node.contains("epsilon")) {
    out.epsilon = read_number(node["epsilon"], path + ".epsilon");
    if (!(out.epsilon > 0.0 && out.epsilon < 1.0)) fail(path + ".epsilon", "must lie in (0, 1)");
  }
  if (node.contains("max_attempts")) {
    out.max_attempts = read_unsigned(node["max_attempts"], path + ".max_attempts");
    if (out.max_attempts == 0) fail(path + ".max_attempts", "must be at least 1");
  }
  if (node.contains("phi")) {
    out.phi = read_number(node["phi"], path + ".phi");
    if (*out.phi == 0.0) fail(path + ".phi", "must be nonzero");
  }
  return out;
}

QpeConfig read_qpe(const json& node, const std::string& path) {
  check_keys(node, path, {"l", "delta", "gamma", "auto_plan"});
  QpeConfig out;
  if (node.contains("auto_plan")) out.auto_plan = read_bool(node["auto_plan"], path + ".auto_plan");
  const bool explicit_given = node.contains("l") || node.contains("delta");
  if (out.auto_plan) {
    if (explicit_given) fail(path, "give either explicit (l, delta) or (gamma, auto_plan), not both");
    if (!node.contains("gamma")) fail(path + ".gamma", "required with auto_plan");
    out.gamma = read_number(node["gamma"], path + ".gamma");
    if (!(out.gamma > 0.0)) fail(path + ".gamma", "must be positive");
    return out;
  }
  if (node.contains("gamma")) fail(path + ".gamma", "only used with auto_plan: true");
  if (!node.contains("l") || !node.contains("delta")) {
    fail(path, "needs both l and delta, or gamma with auto_plan: true");
  }
  out.l = static_cast<std::size_t>(read_unsigned(node["l"], path + ".l"));
  if (out.l == 0) fail(path + ".l", "must be at least 1");
  if (out.l > kMaxQubits) throw CapacityError(path + ".l: " + std::to_string(out.l) + " phase bits exceed the qubit cap");
  out.delta = read_number(node["delta"], path + ".delta");
  if (!(out.delta > 0.0)) fail(path + ".delta", "must be positive");
  return out;
}

SpectrumConfig read_spectrum(const json& node, const std::string& path) {
  check_keys(node, path, {"points", "gamma"});
  SpectrumConfig out;
  if (node.contains("points")) {
    out.points = static_cast<std::size_t>(read_unsigned(node["points"], path + ".points"));
    if (out.points < 2 || out.points > 1000000) fail(path + ".points", "must lie in [2, 1e6]");
  }
  if (node.contains("gamma")) {
    out.gamma = read_number(node["gamma"], path + ".gamma");
    if (!(*out.gamma > 0.0)) fail(path + ".gamma", "must be positive");
  }
  return out;
}

json parse_document(std::string_view raw) {
  try {
    return json::parse(raw);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Resolution {
  std::optional<ResolutionPlan> plan;
  std::size_t l = 0;
  double delta = 0.0;
};

Resolution resolve_qpe(const QpeConfig& qpe, const EigenDecomposition& eig) {
  Resolution out;
  if (!qpe.auto_plan) {
    out.l = qpe.l;
    out.delta = qpe.delta;
    return out;
  }
  // Outcomes cover both signs of eps_n - eps_m, so the register has to span
  // twice the spectral width.
  const double bandwidth = 2.0 * (eig.eigenvalues.maxCoeff() - eig.eigenvalues.minCoeff());
  if (!(bandwidth > 0.0)) fail("config.qpe.auto_plan", "Hamiltonian spectrum is flat, nothing to plan for");
  if (!(qpe.gamma < bandwidth)) {
    fail("config.qpe.gamma", "must be below the bandwidth 2 (eps_max - eps_min) = " + format_number(bandwidth));
  }
  out.plan = plan_resolution(bandwidth, qpe.gamma);
  out.l = out.plan->l;
  out.delta = out.plan->delta;
  return out;
}

std::vector<double> spectrum_grid(std::size_t points, double delta) {
  const double half = std::numbers::pi / delta;
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = -half + 2.0 * half * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

void check_capacity(std::size_t num_sites, std::size_t l) {
  if (2 * num_sites + l > kMaxQubits) {
    throw CapacityError("run needs 2N + l = " + std::to_string(2 * num_sites + l) + " qubits, cap is " +
                        std::to_string(kMaxQubits));
  }
}

}  // namespace

std::string library_version() { return "0.1.0"; }

ExperimentConfig validate_config(std::string_view raw) {
  const json doc = parse_document(raw);
  const std::string root = "config";
  check_keys(doc, root, {"model", "observable", "ensemble", "prep", "qpe", "shots", "seed", "output_dir", "spectrum"});
  for (const char* required : {"model", "observable", "qpe"}) {
    if (!doc.contains(required)) fail(root + "." + required, "required");
  }
  ExperimentConfig out;
  out.model = read_model(doc["model"], root + ".model", 0);
  out.observable = read_model(doc["observable"], root + ".observable", out.model.num_sites);
  if (doc.contains("ensemble")) out.ensemble = read_ensemble(doc["ensemble"], root + ".ensemble");
  if (doc.contains("prep")) out.prep = read_prep(doc["prep"], root + ".prep");
  out.qpe = read_qpe(doc["qpe"], root + ".qpe");
  if (doc.contains("shots")) out.shots = read_unsigned(doc["shots"], root + ".shots");
  if (doc.contains("seed")) out.seed = read_unsigned(doc["seed"], root + ".seed");
  if (doc.contains("output_dir")) out.output_dir = read_string(doc["output_dir"], root + ".output_dir");
  if (doc.contains("spectrum")) out.spectrum = read_spectrum(doc["spectrum"], root + ".spectrum");
  if (!out.qpe.auto_plan) check_capacity(out.model.num_sites, out.qpe.l);
  return out;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return validate_config(buffer.str());
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto start = Clock::now();
  ExperimentReport report;
  report.config = config;
  auto& meta = report.metadata;
  meta.version = library_version();
  meta.seed = config.seed;
  meta.num_sites = config.model.num_sites;

  const HermitianOperator hamiltonian = build_operator(config.model);
  const HermitianOperator observable = build_operator(config.observable);
  if (hamiltonian.dim() != observable.dim()) throw ConfigError("config.observable: size differs from the model");
  const auto eig = eig_hermitian(hamiltonian);
  meta.timings_ms["diagonalize"] = elapsed_ms(start);

  const auto resolution = resolve_qpe(config.qpe, eig);
  report.plan = resolution.plan;
  report.l = resolution.l;
  report.delta = resolution.delta;
  const std::size_t n = config.model.num_sites;
  check_capacity(n, report.l);
  meta.total_qubits = 2 * n + report.l;

  const auto ground = find_ground_state(eig);
  meta.ground_degeneracy = ground.degeneracy;
  if (config.ensemble.kind == EnsembleSpec::Kind::ground_state && ground.degeneracy > 1) {
    meta.warnings.push_back("ground state is " + std::to_string(ground.degeneracy) +
                            "-fold degenerate; using the lowest-index eigenvector");
  }
  if (auto w = traceless_warning(observable)) meta.warnings.push_back(*w);

  // Preparation.
  auto t = Clock::now();
  const StateVector base = ensemble_base_state(eig, config.ensemble);
  auto& prep = report.prep_stats;
  prep.mode = config.prep.mode;
  const PhiChoice choice = choose_phi(observable, config.prep.epsilon, base);
  prep.phi = config.prep.phi.value_or(choice.phi);
  prep.predicted_acceptance = choice.predicted_acceptance;
  StateVector prepared(2 * n);
  if (config.prep.mode == PrepConfig::Mode::exact) {
    prepared = apply_on_first_copy(observable, base);
    prepared.normalize(1e-12);
    prep.acceptance_probability = acceptance_probability(observable, prep.phi, base);
    prep.fidelity = 1.0;
  } else {
    auto branches = simulate_prep_circuit(observable, prep.phi, base);
    prep.acceptance_probability = branches.acceptance_probability;
    prep.fidelity = branches.fidelity_with_target;
    bool accepted = false;
    for (std::uint64_t k = 0; k < config.prep.max_attempts && !accepted; ++k) {
      accepted = draw_acceptance(branches.acceptance_probability, derive_seed(config.seed, seed_stream::prep_draw, k));
      prep.attempts = k + 1;
    }
    if (!accepted) {
      throw PrepExhaustedError("circuit preparation failed in all " + std::to_string(config.prep.max_attempts) +
                                   " attempts (observed acceptance rate 0, exact P1 = " +
                                   format_number(branches.acceptance_probability) + ")",
                               config.prep.max_attempts, 0.0);
    }
    prepared = std::move(branches.accepted_state);
  }
  meta.timings_ms["prepare"] = elapsed_ms(t);

  t = Clock::now();
  report.exact_distribution = run_qpe(prepared, eig, report.l, report.delta);
  meta.timings_ms["qpe"] = elapsed_ms(t);

  t = Clock::now();
  report.oracle_distribution = exact_outcome_distribution(eig, observable, report.l, report.delta, config.ensemble);
  const auto weights = golden_rule_weights(eig, observable, config.ensemble);
  if (weights.differs) {
    meta.warnings.push_back("complex inputs: purification weights differ from |<E_n|O|E_m>|^2");
  }
  report.lines = spectral_lines(weights.weights, weights.energies);
  const double gamma = config.spectrum.gamma.value_or(kTwoPi / (report.delta * static_cast<double>(pow2(report.l))));
  const auto grid = spectrum_grid(config.spectrum.points, report.delta);
  report.spectrum_table = spectral_function(eig, observable, grid, gamma, config.ensemble);
  meta.timings_ms["oracle"] = elapsed_ms(t);

  auto& dist = report.distances;
  dist.tv_circuit_oracle = distribution_distance(report.exact_distribution.probabilities,
                                                 report.oracle_distribution.probabilities,
                                                 DistanceMetric::total_variation);
  dist.max_abs_circuit_oracle = distribution_distance(report.exact_distribution.probabilities,
                                                      report.oracle_distribution.probabilities, DistanceMetric::max_abs);
  if (config.shots > 0) {
    t = Clock::now();
    report.empirical_distribution =
        sample_outcomes(report.exact_distribution, config.shots, derive_seed(config.seed, seed_stream::shots));
    dist.tv_empirical_exact = distribution_distance(report.empirical_distribution->probabilities,
                                                    report.exact_distribution.probabilities,
                                                    DistanceMetric::total_variation);
    dist.max_abs_empirical_exact = distribution_distance(report.empirical_distribution->probabilities,
                                                         report.exact_distribution.probabilities,
                                                         DistanceMetric::max_abs);
    meta.timings_ms["sample"] = elapsed_ms(t);
  }
  meta.timings_ms["total"] = elapsed_ms(start);

  if (!config.output_dir.empty()) write_outputs(report, config.output_dir);
  return report;
}

OracleReport run_oracle(const ExperimentConfig& config) {
  OracleReport report;
  report.config = config;
  const HermitianOperator hamiltonian = build_operator(config.model);
  const HermitianOperator observable = build_operator(config.observable);
  const auto eig = eig_hermitian(hamiltonian);
  const auto resolution = resolve_qpe(config.qpe, eig);
  report.l = resolution.l;
  report.delta = resolution.delta;
  report.weights = golden_rule_weights(eig, observable, config.ensemble);
  report.lines = spectral_lines(report.weights.weights, report.weights.energies);
  report.oracle_distribution = exact_outcome_distribution(eig, observable, report.l, report.delta, config.ensemble);
  const double gamma = config.spectrum.gamma.value_or(kTwoPi / (report.delta * static_cast<double>(pow2(report.l))));
  report.spectrum_table =
      spectral_function(eig, observable, spectrum_grid(config.spectrum.points, report.delta), gamma, config.ensemble);
  if (!config.output_dir.empty()) write_outputs(report, config.output_dir);
  return report;
}

PrepStudyConfig validate_prepstudy_config(std::string_view raw) {
  const json doc = parse_document(raw);
  const std::string root = "config";
  check_keys(doc, root, {"prepstudy", "seed", "output_dir"});
  if (!doc.contains("prepstudy")) fail(root + ".prepstudy", "required");
  PrepStudyConfig out;
  if (doc.contains("seed")) out.seed = read_unsigned(doc["seed"], root + ".seed");
  if (doc.contains("output_dir")) out.output_dir = read_string(doc["output_dir"], root + ".output_dir");

  const std::string path = root + ".prepstudy";
  const json& study = doc["prepstudy"];
  check_keys(study, path, {"distributions", "num_sites", "parameter", "phi", "phi_values"});
  double parameter = 1.0;
  if (study.contains("parameter")) {
    parameter = read_number(study["parameter"], path + ".parameter");
    if (!(parameter > 0.0)) fail(path + ".parameter", "must be positive");
  }
  if (study.contains("distributions")) {
    const auto& list = study["distributions"];
    if (!list.is_array() || list.empty()) fail(path + ".distributions", "expected a non-empty array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string item = path + ".distributions[" + std::to_string(i) + "]";
      try {
        out.distributions.push_back({EigenvalueDistribution::parse_kind(read_string(list[i], item)), parameter});
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        fail(item, e.what());
      }
    }
  } else {
    using K = EigenvalueDistribution::Kind;
    for (K k : {K::semicircle, K::uniform, K::arcsine, K::gaussian}) out.distributions.push_back({k, parameter});
  }
  if (study.contains("num_sites")) {
    out.num_sites = static_cast<std::size_t>(read_unsigned(study["num_sites"], path + ".num_sites"));
    if (out.num_sites == 0) fail(path + ".num_sites", "must be at least 1");
    if (out.num_sites > kMaxSystemSites) {
      throw CapacityError(path + ".num_sites: " + std::to_string(out.num_sites) + " sites exceed the limit of " +
                          std::to_string(kMaxSystemSites));
    }
  }

  if (study.contains("phi") && study.contains("phi_values")) fail(path, "give either phi or phi_values, not both");
  if (study.contains("phi_values")) {
    const auto& list = study["phi_values"];
    if (!list.is_array() || list.empty()) fail(path + ".phi_values", "expected a non-empty array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const double phi = read_number(list[i], path + ".phi_values[" + std::to_string(i) + "]");
      if (phi == 0.0) fail(path + ".phi_values[" + std::to_string(i) + "]", "must be nonzero");
      out.phis.push_back(phi);
    }
  } else {
    double lo = 1e-3;
    double hi = 3.0;
    std::size_t points = 60;
    if (study.contains("phi")) {
      const std::string grid_path = path + ".phi";
      const json& grid = study["phi"];
      check_keys(grid, grid_path, {"min", "max", "points"});
      if (grid.contains("min")) lo = read_number(grid["min"], grid_path + ".min");
      if (grid.contains("max")) hi = read_number(grid["max"], grid_path + ".max");
      if (grid.contains("points")) points = static_cast<std::size_t>(read_unsigned(grid["points"], grid_path + ".points"));
      if (!(lo > 0.0 && hi > lo)) fail(grid_path, "needs 0 < min < max");
      if (points < 2) fail(grid_path + ".points", "must be at least 2");
    }
    for (std::size_t i = 0; i < points; ++i) {
      const double s = static_cast<double>(i) / static_cast<double>(points - 1);
      out.phis.push_back(lo * std::pow(hi / lo, s));
    }
  }
  return out;
}

PrepStudyReport run_prepstudy(const PrepStudyConfig& config) {
  PrepStudyReport report;
  report.config = config;
  for (std::size_t i = 0; i < config.distributions.size(); ++i) {
    const auto& law = config.distributions[i];
    const auto op = synthetic_diagonal_observable(
        law, config.num_sites, derive_seed(config.seed, seed_stream::synthetic_observable, i));
    const auto measure = spectral_measure(op);
    PrepStudySummary summary;
    summary.distribution = law.name();
    summary.analytic_constant = moment_ratio_constant(law);
    summary.moments = moments(measure);
    summary.sample_constant = small_angle_ratio(summary.moments);
    report.summaries.push_back(summary);
    for (double phi : config.phis) {
      report.rows.push_back(
          {phi, acceptance_probability(measure, phi), preparation_fidelity(measure, phi), law.name()});
    }
  }
  if (!config.output_dir.empty()) write_outputs(report, config.output_dir);
  return report;
}

}  // namespace qspec
