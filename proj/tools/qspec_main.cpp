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

// qspec command line: run | prepstudy | oracle | plan.
// Exit codes: 0 success, 1 config or other error, 2 resource cap, 3 prep exhaustion.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qspec/errors.hpp"
#include "qspec/experiment.hpp"
#include "qspec/export.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 1, kCapacity = 2, kPrepExhausted = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qspec::ConfigError("config: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, Common& common, bool config_required) {
  auto* opt = cmd->add_option("--config", common.config_path, "JSON config file");
  if (config_required) opt->required();
  cmd->add_option("--seed", common.seed, "master seed (overrides the config)");
  cmd->add_option("--out", common.out, "output directory (overrides the config)");
}

qspec::ExperimentConfig load(const Common& common) {
  auto config = qspec::validate_config(read_file(common.config_path));
  if (common.seed) config.seed = *common.seed;
  if (common.out) config.output_dir = *common.out;
  return config;
}

int cmd_run(const Common& common) {
  const auto report = qspec::run_experiment(load(common));
  const auto& d = report.distances;
  std::cout << "l = " << report.l << ", delta = " << qspec::format_number(report.delta) << "\n"
            << "prep: P1 = " << qspec::format_number(report.prep_stats.acceptance_probability)
            << ", F = " << qspec::format_number(report.prep_stats.fidelity)
            << ", attempts = " << report.prep_stats.attempts << "\n"
            << "TV(circuit, oracle) = " << qspec::format_number(d.tv_circuit_oracle) << "\n";
  if (d.tv_empirical_exact) {
    std::cout << "TV(empirical, exact) = " << qspec::format_number(*d.tv_empirical_exact) << "\n";
  }
  for (const auto& w : report.metadata.warnings) std::cerr << "warning: " << w << "\n";
  if (!report.config.output_dir.empty()) std::cout << "wrote " << report.config.output_dir << "\n";
  return kOk;
}

int cmd_oracle(const Common& common) {
  const auto report = qspec::run_oracle(load(common));
  std::cout << "l = " << report.l << ", delta = " << qspec::format_number(report.delta) << ", "
            << report.lines.size() << " spectral lines\n";
  if (!report.config.output_dir.empty()) std::cout << "wrote " << report.config.output_dir << "\n";
  return kOk;
}

int cmd_prepstudy(const Common& common) {
  auto config = qspec::validate_prepstudy_config(read_file(common.config_path));
  if (common.seed) config.seed = *common.seed;
  if (common.out) config.output_dir = *common.out;
  const auto report = qspec::run_prepstudy(config);
  for (const auto& s : report.summaries) {
    std::cout << s.distribution << ": c = " << qspec::format_number(s.analytic_constant)
              << " (sample " << qspec::format_number(s.sample_constant) << ")\n";
  }
  if (!config.output_dir.empty()) std::cout << "wrote " << config.output_dir << "\n";
  return kOk;
}

int cmd_plan(const Common& common, std::optional<double> omega_max, std::optional<double> gamma) {
  if (!common.config_path.empty()) {
    auto config = load(common);
    if (!config.qpe.auto_plan) throw qspec::ConfigError("config.qpe: plan needs gamma with auto_plan: true");
    config.output_dir.clear();
    const auto report = qspec::run_oracle(config);
    std::cout << nlohmann::json{{"l", report.l}, {"delta", report.delta}}.dump(2) << "\n";
    return kOk;
  }
  if (!omega_max || !gamma) throw qspec::ConfigError("plan: give --omega-max and --gamma, or --config");
  try {
    std::cout << qspec::to_json(qspec::plan_resolution(*omega_max, *gamma)).dump(2) << "\n";
  } catch (const qspec::ArgumentError& e) {
    throw qspec::ConfigError(std::string("plan: ") + e.what());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qspec: spectroscopy of purified operators by phase estimation"};
  app.require_subcommand(1);

  Common run_opts, oracle_opts, study_opts, plan_opts;
  auto* run = app.add_subcommand("run", "full pipeline: prepare, phase estimation, oracle comparison");
  add_common(run, run_opts, true);
  auto* oracle = app.add_subcommand("oracle", "reference spectra and outcome distribution only");
  add_common(oracle, oracle_opts, true);
  auto* study = app.add_subcommand("prepstudy", "acceptance and fidelity over phi for synthetic observables");
  add_common(study, study_opts, true);
  auto* plan = app.add_subcommand("plan", "phase-register size and coupling time for a target linewidth");
  add_common(plan, plan_opts, false);
  std::optional<double> omega_max, gamma;
  plan->add_option("--omega-max", omega_max, "bandwidth to resolve");
  plan->add_option("--gamma", gamma, "target linewidth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return cmd_run(run_opts);
    if (*oracle) return cmd_oracle(oracle_opts);
    if (*study) return cmd_prepstudy(study_opts);
    if (*plan) return cmd_plan(plan_opts, omega_max, gamma);
  } catch (const qspec::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCapacity;
  } catch (const qspec::PrepExhaustedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrepExhausted;
  } catch (const qspec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kOk;
}
