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
 * CSV and JSON writers. Every number goes out with 17 significant digits so
 * files round-trip to the same doubles.
 */

#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "qspec/experiment.hpp"

namespace qspec {

/// "%.17g".
std::string format_number(double x);

/// f, omega, p_exact, p_oracle, p_empirical (last column empty without shots).
std::string distribution_csv(const ExperimentReport& report);
/// f, omega, probability.
std::string phase_distribution_csv(const PhaseDistribution& dist);
/// omega, sigma.
std::string spectrum_csv(const SpectrumTable& table);
/// omega, weight.
std::string lines_csv(const std::vector<SpectralLine>& lines);
/// phi, P1, fidelity, distribution, N, seed.
std::string prepstudy_csv(const PrepStudyReport& report);

nlohmann::json to_json(const PhaseDistribution& dist);
nlohmann::json to_json(const SpectrumTable& table);
nlohmann::json to_json(const ResolutionPlan& plan);
nlohmann::json to_json(const ExperimentReport& report);
nlohmann::json to_json(const OracleReport& report);
nlohmann::json to_json(const PrepStudyReport& report);

void write_text(const std::filesystem::path& path, const std::string& text);

void write_outputs(const ExperimentReport& report, const std::filesystem::path& dir);
void write_outputs(const OracleReport& report, const std::filesystem::path& dir);
void write_outputs(const PrepStudyReport& report, const std::filesystem::path& dir);

}  // namespace qspec
