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
 * Config-driven runs: model + ensemble + preparation + phase estimation +
 * oracle comparison.
 *
 * Seeds are derived from the single master seed with derive_seed:
 *   stream 1, index k  -> k-th postselection draw in circuit preparation
 *   stream 2, index 0  -> shot sampling
 *   stream 3, index i  -> synthetic observable for the i-th prepstudy law
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qspec/models.hpp"
#include "qspec/oracle.hpp"
#include "qspec/purify.hpp"
#include "qspec/qpe.hpp"
#include "qspec/stateprep.hpp"

namespace qspec {

inline constexpr int kReportSchemaVersion = 1;

namespace seed_stream {
inline constexpr std::uint64_t prep_draw = 1;
inline constexpr std::uint64_t shots = 2;
inline constexpr std::uint64_t synthetic_observable = 3;
}  // namespace seed_stream

struct PrepConfig {
  enum class Mode { exact, circuit };
  Mode mode = Mode::exact;
  double epsilon = 0.01;
  std::uint64_t max_attempts = 1000;
  /// Overrides choose_phi when set.
  std::optional<double> phi;
};

struct QpeConfig {
  std::size_t l = 0;
  double delta = 0.0;
  /// auto_plan: l and delta come from plan_resolution(2 (eps_max - eps_min), gamma).
  bool auto_plan = false;
  double gamma = 0.0;
};

struct SpectrumConfig {
  std::size_t points = 512;
  /// Defaults to one register bin, 2 pi / (Delta 2^l).
  std::optional<double> gamma;
};

struct ExperimentConfig {
  ModelSpec model;
  ModelSpec observable;
  EnsembleSpec ensemble;
  PrepConfig prep;
  QpeConfig qpe;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  /// Empty: compute only, write nothing.
  std::string output_dir = "qspec_out";
  SpectrumConfig spectrum;
};

/// Parses a JSON document, applies defaults and rejects unknown fields.
/// Throws ConfigError with a field path ("config.qpe.l: ...").
ExperimentConfig validate_config(std::string_view raw);
ExperimentConfig load_config(const std::filesystem::path& path);

struct PrepStats {
  PrepConfig::Mode mode = PrepConfig::Mode::exact;
  double phi = 0.0;
  double acceptance_probability = 0.0;
  double fidelity = 1.0;
  /// Postselection rounds until success (circuit mode); 0 in exact mode.
  std::uint64_t attempts = 0;
  double predicted_acceptance = 0.0;
};

struct Distances {
  double tv_circuit_oracle = 0.0;
  double max_abs_circuit_oracle = 0.0;
  std::optional<double> tv_empirical_exact;
  std::optional<double> max_abs_empirical_exact;
};

struct RunMetadata {
  std::string version;
  std::uint64_t seed = 0;
  std::size_t num_sites = 0;
  std::size_t total_qubits = 0;
  std::size_t ground_degeneracy = 1;
  std::vector<std::string> warnings;
  std::map<std::string, double> timings_ms;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::optional<ResolutionPlan> plan;
  std::size_t l = 0;
  double delta = 0.0;
  PhaseDistribution exact_distribution;
  std::optional<PhaseDistribution> empirical_distribution;
  PhaseDistribution oracle_distribution;
  SpectrumTable spectrum_table;
  std::vector<SpectralLine> lines;
  PrepStats prep_stats;
  Distances distances;
  RunMetadata metadata;
};

/// Full pipeline; writes distribution.csv, spectrum.csv and report.json into
/// output_dir unless it is empty. Throws CapacityError beyond the qubit cap and
/// PrepExhaustedError when circuit preparation runs out of attempts.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct OracleReport {
  ExperimentConfig config;
  std::size_t l = 0;
  double delta = 0.0;
  PhaseDistribution oracle_distribution;
  SpectrumTable spectrum_table;
  GoldenRuleWeights weights;
  std::vector<SpectralLine> lines;
};

/// Reference quantities only, no circuit simulation.
OracleReport run_oracle(const ExperimentConfig& config);

// Preparation study ---------------------------------------------------------

struct PrepStudyConfig {
  std::vector<EigenvalueDistribution> distributions;
  std::size_t num_sites = 10;
  std::vector<double> phis;
  std::uint64_t seed = 0;
  std::string output_dir = "qspec_out";
};

/// {"prepstudy": {"distributions": [...], "num_sites": N, "parameter": s,
///  "phi": {"min", "max", "points"} or "phi_values": [...]}, "seed", "output_dir"}.
PrepStudyConfig validate_prepstudy_config(std::string_view raw);

struct PrepStudyRow {
  double phi = 0.0;
  double acceptance = 0.0;
  double fidelity = 0.0;
  std::string distribution;
};

struct PrepStudySummary {
  std::string distribution;
  double analytic_constant = 0.0;
  double sample_constant = 0.0;
  MomentSet moments;
};

struct PrepStudyReport {
  PrepStudyConfig config;
  std::vector<PrepStudyRow> rows;
  std::vector<PrepStudySummary> summaries;
};

/// P1 and F over the phi grid for synthetic observables; writes
/// prepstudy.csv and prepstudy.json unless output_dir is empty.
PrepStudyReport run_prepstudy(const PrepStudyConfig& config);

std::string library_version();

}  // namespace qspec
