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

#include "qspec/export.hpp"

#include <cstdio>
#include <fstream>

#include "qspec/errors.hpp"

namespace qspec {

namespace {

using nlohmann::json;

std::string kind_name(PhaseDistribution::Kind kind) {
  return kind == PhaseDistribution::Kind::exact ? "exact" : "empirical";
}

std::string mode_name(PrepConfig::Mode mode) { return mode == PrepConfig::Mode::exact ? "exact" : "circuit"; }

json model_json(const ModelSpec& spec) {
  json terms = json::array();
  for (const auto& term : spec.terms) terms.push_back({{"coefficient", term.coefficient}, {"paulis", term.factors}});
  return {{"name", spec.name}, {"num_sites", spec.num_sites}, {"terms", terms}};
}

json ensemble_json(const EnsembleSpec& ensemble) {
  json out = {{"kind", ensemble.name()}};
  if (ensemble.kind == EnsembleSpec::Kind::gibbs) out["beta"] = ensemble.beta;
  return out;
}

json config_json(const ExperimentConfig& config) {
  json prep = {{"mode", mode_name(config.prep.mode)},
               {"epsilon", config.prep.epsilon},
               {"max_attempts", config.prep.max_attempts}};
  if (config.prep.phi) prep["phi"] = *config.prep.phi;
  json qpe = config.qpe.auto_plan ? json{{"gamma", config.qpe.gamma}, {"auto_plan", true}}
                                  : json{{"l", config.qpe.l}, {"delta", config.qpe.delta}};
  json spectrum = {{"points", config.spectrum.points}};
  if (config.spectrum.gamma) spectrum["gamma"] = *config.spectrum.gamma;
  return {{"model", model_json(config.model)},
          {"observable", model_json(config.observable)},
          {"ensemble", ensemble_json(config.ensemble)},
          {"prep", prep},
          {"qpe", qpe},
          {"shots", config.shots},
          {"seed", config.seed},
          {"output_dir", config.output_dir},
          {"spectrum", spectrum}};
}

json lines_json(const std::vector<SpectralLine>& lines) {
  json out = json::array();
  for (const auto& line : lines) out.push_back({{"omega", line.omega}, {"weight", line.weight}});
  return out;
}

json matrix_json(const RealMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

}  // namespace

std::string format_number(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

std::string distribution_csv(const ExperimentReport& report) {
  std::string out = "f,omega,p_exact,p_oracle,p_empirical\n";
  const auto& exact = report.exact_distribution;
  for (std::uint64_t f = 0; f < exact.size(); ++f) {
    out += std::to_string(f) + "," + format_number(exact.frequency(f)) + "," + format_number(exact.probabilities[f]) +
           "," + format_number(report.oracle_distribution.probabilities[f]) + ",";
    if (report.empirical_distribution) out += format_number(report.empirical_distribution->probabilities[f]);
    out += "\n";
  }
  return out;
}

std::string phase_distribution_csv(const PhaseDistribution& dist) {
  std::string out = "f,omega,probability\n";
  for (std::uint64_t f = 0; f < dist.size(); ++f) {
    out += std::to_string(f) + "," + format_number(dist.frequency(f)) + "," + format_number(dist.probabilities[f]) + "\n";
  }
  return out;
}

std::string spectrum_csv(const SpectrumTable& table) {
  std::string out = "omega,sigma\n";
  for (std::size_t i = 0; i < table.frequencies.size(); ++i) {
    out += format_number(table.frequencies[i]) + "," + format_number(table.values[i]) + "\n";
  }
  return out;
}

std::string lines_csv(const std::vector<SpectralLine>& lines) {
  std::string out = "omega,weight\n";
  for (const auto& line : lines) out += format_number(line.omega) + "," + format_number(line.weight) + "\n";
  return out;
}

std::string prepstudy_csv(const PrepStudyReport& report) {
  std::string out = "phi,P1,fidelity,distribution,N,seed\n";
  const std::string tail = "," + std::to_string(report.config.num_sites) + "," + std::to_string(report.config.seed) + "\n";
  for (const auto& row : report.rows) {
    out += format_number(row.phi) + "," + format_number(row.acceptance) + "," + format_number(row.fidelity) + "," +
           row.distribution + tail;
  }
  return out;
}

json to_json(const PhaseDistribution& dist) {
  json out = {{"l", dist.l}, {"delta", dist.delta}, {"kind", kind_name(dist.kind)}, {"probabilities", dist.probabilities}};
  if (dist.kind == PhaseDistribution::Kind::empirical) {
    out["shots"] = dist.shots;
    out["counts"] = dist.counts;
  }
  return out;
}

json to_json(const SpectrumTable& table) {
  return {{"gamma", table.gamma},
          {"ensemble", ensemble_json(table.ensemble)},
          {"frequencies", table.frequencies},
          {"values", table.values}};
}

json to_json(const ResolutionPlan& plan) {
  return {{"l", plan.l},
          {"delta", plan.delta},
          {"omega_max", plan.omega_max},
          {"gamma", plan.gamma},
          {"satisfies_bounds", plan.satisfies_bounds()}};
}

json to_json(const ExperimentReport& report) {
  const auto& prep = report.prep_stats;
  const auto& d = report.distances;
  json distances = {{"tv_circuit_oracle", d.tv_circuit_oracle}, {"max_abs_circuit_oracle", d.max_abs_circuit_oracle}};
  if (d.tv_empirical_exact) {
    distances["tv_empirical_exact"] = *d.tv_empirical_exact;
    distances["max_abs_empirical_exact"] = *d.max_abs_empirical_exact;
  }
  const auto& meta = report.metadata;
  json out = {
      {"schema_version", kReportSchemaVersion},
      {"config", config_json(report.config)},
      {"l", report.l},
      {"delta", report.delta},
      {"exact_distribution", to_json(report.exact_distribution)},
      {"oracle_distribution", to_json(report.oracle_distribution)},
      {"spectrum", to_json(report.spectrum_table)},
      {"lines", lines_json(report.lines)},
      {"prep_stats",
       {{"mode", mode_name(prep.mode)},
        {"phi", prep.phi},
        {"acceptance_probability", prep.acceptance_probability},
        {"fidelity", prep.fidelity},
        {"attempts", prep.attempts},
        {"predicted_acceptance", prep.predicted_acceptance}}},
      {"distances", distances},
      {"metadata",
       {{"version", meta.version},
        {"seed", meta.seed},
        {"num_sites", meta.num_sites},
        {"total_qubits", meta.total_qubits},
        {"ground_degeneracy", meta.ground_degeneracy},
        {"warnings", meta.warnings},
        {"timings_ms", meta.timings_ms}}},
  };
  out["plan"] = report.plan ? to_json(*report.plan) : json(nullptr);
  out["empirical_distribution"] = report.empirical_distribution ? to_json(*report.empirical_distribution) : json(nullptr);
  return out;
}

json to_json(const OracleReport& report) {
  return {{"schema_version", kReportSchemaVersion},
          {"config", config_json(report.config)},
          {"l", report.l},
          {"delta", report.delta},
          {"oracle_distribution", to_json(report.oracle_distribution)},
          {"spectrum", to_json(report.spectrum_table)},
          {"lines", lines_json(report.lines)},
          {"energies", std::vector<double>(report.weights.energies.begin(), report.weights.energies.end())},
          {"weights", matrix_json(report.weights.weights)},
          {"operational_weights", matrix_json(report.weights.operational)},
          {"weights_differ", report.weights.differs}};
}

json to_json(const PrepStudyReport& report) {
  json summaries = json::array();
  for (const auto& s : report.summaries) {
    summaries.push_back({{"distribution", s.distribution},
                         {"analytic_constant", s.analytic_constant},
                         {"sample_constant", s.sample_constant},
                         {"m2", s.moments.m2},
                         {"m4", s.moments.m4}});
  }
  return {{"schema_version", kReportSchemaVersion},
          {"num_sites", report.config.num_sites},
          {"seed", report.config.seed},
          {"summaries", summaries}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

namespace {

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

}  // namespace

void write_outputs(const ExperimentReport& report, const std::filesystem::path& dir) {
  prepare_dir(dir);
  write_text(dir / "distribution.csv", distribution_csv(report));
  write_text(dir / "spectrum.csv", spectrum_csv(report.spectrum_table));
  write_text(dir / "report.json", to_json(report).dump(2) + "\n");
}

void write_outputs(const OracleReport& report, const std::filesystem::path& dir) {
  prepare_dir(dir);
  write_text(dir / "oracle_distribution.csv", phase_distribution_csv(report.oracle_distribution));
  write_text(dir / "spectrum.csv", spectrum_csv(report.spectrum_table));
  write_text(dir / "lines.csv", lines_csv(report.lines));
  write_text(dir / "oracle.json", to_json(report).dump(2) + "\n");
}

void write_outputs(const PrepStudyReport& report, const std::filesystem::path& dir) {
  prepare_dir(dir);
  write_text(dir / "prepstudy.csv", prepstudy_csv(report));
  write_text(dir / "prepstudy.json", to_json(report).dump(2) + "\n");
}

}  // namespace qspec
