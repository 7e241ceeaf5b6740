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
#include <optional>
#include <vector>

#include "nscatter/backend.hpp"
#include "nscatter/circuit.hpp"

namespace nscatter {

struct ConfusionEstimate {
  std::vector<Confusion> per_qubit;
  std::optional<std::uint64_t> shots;  // empty when read back in exact mode
};

/// Runs the two calibration circuits (all qubits idle, X on every qubit) and
/// reads each qubit's confusion columns off the marginals. Circuit c is
/// sampled from stream derive(seed, Calibration, {c}).
ConfusionEstimate rcal_calibrate(const NoiseModel& noise, int num_qubits, std::optional<std::uint64_t> shots,
                                 std::uint64_t seed);

/// Smallest |det| accepted for a per-qubit confusion matrix.
inline constexpr double kMinConfusionDeterminant = 1e-6;

/// Per-qubit inverse confusion applied to the distribution, before clipping.
/// Throws std::invalid_argument for near-singular estimates.
std::vector<double> rcal_correct_unclipped(const Distribution& dist, const ConfusionEstimate& est);
Distribution rcal_correct(const Distribution& dist, const ConfusionEstimate& est);

/// Zeroes negative entries and rescales to unit sum.
std::vector<double> clip_and_renormalize(std::vector<double> p);

struct TwirlSet {
  Circuit base;
  std::vector<Circuit> members;
  std::vector<std::uint64_t> seeds;

  std::size_t size() const { return members.size(); }
};

/// Pauli frame pushed through an entangling gate, as (x, z) bits per qubit.
struct PauliFrame {
  int x0 = 0, z0 = 0, x1 = 0, z1 = 0;
};
PauliFrame conjugate_through(const Gate& gate, const PauliFrame& in);

/// Pauli twirl around every entangling gate. Member m draws from stream
/// derive(master_seed, Twirl, {m}); twirl and compensation gates are merged
/// into the neighbouring single-qubit layers.
TwirlSet randomized_compile(const Circuit& circuit, std::size_t n, std::uint64_t master_seed);

/// Purification rejects amplification factors above 1/kMinPurifyDecay.
inline constexpr double kMinPurifyDecay = 1e-6;

/// Divides every Z-string expectation by lambda^N and maps back to
/// probabilities, before clipping.
std::vector<double> purify_unclipped(const Distribution& dist, double lambda, std::size_t n_2q_gates);
Distribution purify(const Distribution& dist, double lambda, std::size_t n_2q_gates);

/// lambda = (dim^2 F - 1)/(dim^2 - 1).
double lambda_from_process_fidelity(double fidelity, std::size_t dim);

}  // namespace nscatter
