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

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "nscatter/backend.hpp"
#include "nscatter/circuit.hpp"
#include "nscatter/config.hpp"
#include "nscatter/mitigation.hpp"
#include "nscatter/spin.hpp"
#include "nscatter/tomography.hpp"
#include "nscatter/trajectory.hpp"

namespace nscatter {

/// Every intermediate of the mitigation chain for one measured circuit.
struct MitigationTrace {
  std::vector<double> raw;
  std::optional<std::vector<double>> rcal;  // RCAL applied to the untwirled circuit
  std::optional<std::vector<double>> rc;    // twirl average, RCAL applied per member when enabled
  std::optional<std::vector<double>> purified;
  std::optional<std::vector<double>> purified_unclipped;
  double lambda = 1.0;
  std::size_t n_2q = 0;
};

struct Execution {
  Distribution raw;
  Distribution mitigated;
  MitigationTrace trace;
  std::uint64_t shot_seed = 0;
};

struct StepResult {
  std::size_t step = 0;
  double t = 0.0;
  Distribution exact;
  Distribution raw;
  Distribution mitigated;
  double tvd_raw = 0.0;
  double tvd_mit = 0.0;
  std::optional<double> fidelity;
  std::size_t entangling_gates = 0;
  std::size_t gate_count = 0;
  bool reinitialized = false;
  MitigationTrace trace;
  std::uint64_t shot_seed = 0;
  std::optional<ReconstructedState> tomography;
  Circuit circuit;
};

struct RunResult {
  ExperimentConfig config;
  Trajectory trajectory;
  std::vector<CoarsePropagator> propagators;
  std::vector<StateVector> exact_states;
  std::vector<StepResult> steps;
};

/// 1/2 sum |p_i - q_i|. Throws std::invalid_argument on a size mismatch.
double tvd(const std::vector<double>& p, const std::vector<double>& q);
double tvd(const Distribution& p, const Distribution& q);

/// |<a|b>|^2
double state_fidelity(const StateVector& a, const StateVector& b);

/// Runs fn(0..n-1) on up to `threads` workers (0: hardware concurrency).
/// The first exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

/// Measures a circuit and applies the configured mitigation chain:
/// RCAL correction, twirl averaging, purification.
Execution execute(const Circuit& circuit, const DensityMatrix& initial, const ExperimentConfig& cfg,
                  const std::optional<ConfusionEstimate>& calibration, std::uint64_t key);

/// Circuit executed at coarse step k (k = 0 is the empty circuit).
std::vector<Circuit> mode_circuits(const ExperimentConfig& cfg, const std::vector<CoarsePropagator>& propagators);

/// Full pipeline; dispatches to run_reinitialized for that mode. Errors are
/// rethrown as std::runtime_error carrying the step index.
RunResult run(const ExperimentConfig& cfg);
RunResult run_reinitialized(const ExperimentConfig& cfg);

/// Steps at which the reinitialized mode rebuilds its circuit.
bool is_reinit_step(std::size_t step, std::size_t t_reini);

}  // namespace nscatter
