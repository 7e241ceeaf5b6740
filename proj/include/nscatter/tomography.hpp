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

#include <string>
#include <vector>

#include "nscatter/backend.hpp"
#include "nscatter/circuit.hpp"
#include "nscatter/linalg.hpp"

namespace nscatter {

// Setting order: 0 is the bare circuit; for each qubit position k in 0..n-1,
// setting 1+2k appends R_y(-pi/2) and setting 2+2k appends R_x(-pi/2) on qubit
// k. Rotating qubit k links basis indices i and i + 2^(n-1-k).

struct TomographyRecord {
  int num_qubits = 0;
  std::vector<double> bare;
  std::vector<std::vector<double>> py;  // py[k]: bare + R_y(-pi/2) on qubit k
  std::vector<std::vector<double>> px;  // px[k]: bare + R_x(-pi/2) on qubit k

  void validate(double tol = 1e-9) const;
};

struct ReconstructedState {
  std::vector<double> amplitudes;  // sqrt(P_i)
  std::vector<double> phases;      // radians; the first populated index has phase 0

  StateVector state() const;
  std::size_t dim() const { return amplitudes.size(); }
};

/// Probabilities below this are treated as empty branches of the phase tree.
inline constexpr double kZeroAmplitudeProbability = 1e-9;

Gate tomography_rotation_x(int qubit);
Gate tomography_rotation_y(int qubit);

/// The 2n+1 measurement circuits for a base circuit on n qubits.
std::vector<Circuit> tomography_settings(const Circuit& base, int n);

/// Assembles a record from the 2n+1 measured distributions in setting order.
TomographyRecord make_record(const std::vector<Distribution>& results, int n);

/// Exact record of a pure state.
TomographyRecord exact_record(const StateVector& psi);

/// Phase difference phi_{i+s} - phi_i between the pair linked by qubit k.
double pair_phase(const TomographyRecord& rec, int k, std::size_t i);

ReconstructedState reconstruct(const TomographyRecord& rec);

/// Givens angles theta_1..theta_{d-1}; entry 0 is unused and left at 0.
std::vector<double> givens_angles(const std::vector<double>& probabilities);

/// Ph * R_TOT: R_TOT rotates |0> into sum_k sqrt(P_k)|k> by rotations in
/// the (0, k) planes; Ph puts the phases on.
ComplexMatrix reinit_operator(const ReconstructedState& state);

/// Two-qubit preparation circuit from |00>. Throws std::invalid_argument for
/// any other register size.
Circuit reinit_circuit(const ReconstructedState& state);

/// {"amplitudes": [...], "phases": [...]}
std::string reconstructed_json(const ReconstructedState& state);

}  // namespace nscatter
