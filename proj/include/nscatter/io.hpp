// Copyright 2026 The nscatter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>

#include "nscatter/pipeline.hpp"

namespace nscatter {

/// %.17g; enough digits to round-trip a double.
std::string format_double(double x);

std::string occupations_csv(const RunResult& result);
/// Infidelity is left empty for steps without a tomographic state.
std::string metrics_csv(const RunResult& result);
std::string mitigation_report_json(const RunResult& result);
/// Per-step raw counts; empty array for exact-mode measurement.
std::string counts_report_json(const RunResult& result);
std::string tomography_report_json(const RunResult& result);

/// Writes occupations.csv, metrics.csv, config.json, trajectory.csv,
/// propagators.json, mitigation.json, counts.json, circuits/step_NN.jsonl and,
/// for the reinitialized mode, tomography.json. Throws std::runtime_error with
/// the failing path on any filesystem error.
void emit(const RunResult& result, const std::filesystem::path& out_dir);

}  // namespace nscatter
