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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nscatter/circuit.hpp"
#include "nscatter/linalg.hpp"

namespace nscatter {

/// C[i][j] = P(measure i | true j); columns sum to 1.
using Confusion = std::array<std::array<double, 2>, 2>;

Confusion identity_confusion();
/// Flip probability eps in both directions.
Confusion symmetric_confusion(double eps);
/// p01 = P(read 0 | true 1), p10 = P(read 1 | true 0).
Confusion asymmetric_confusion(double p10, double p01);

struct DensityMatrix {
  ComplexMatrix rho;

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix basis(int num_qubits, std::size_t index);

  int num_qubits() const;
  /// Diagonal in the computational basis, with rounding negatives removed.
  std::vector<double> populations() const;
  /// <psi|rho|psi>
  double fidelity(const StateVector& psi) const;
};

struct NoiseModel {
  double lambda2q = 1.0;
  double lambda1q = 1.0;
  std::vector<Confusion> confusion{identity_confusion(), identity_confusion()};
  /// Coherent over-rotation eps after every entangling gate:
  /// exp(-i eps/2 Z_c X_t) for CNOT, exp(-i eps/2 Z Z) for CZ.
  double over_rotation = 0.0;

  static NoiseModel ideal(int num_qubits = 2);

  /// Throws std::invalid_argument if a parameter is out of range.
  void validate() const;
  const Confusion& confusion_for(int qubit) const;
};

/// Process fidelity of one noisy entangling gate against its ideal version:
/// lambda2q cos^2(eps/2) + (1 - lambda2q)/16.
double entangling_process_fidelity(const NoiseModel& noise);

/// The coherent error operator attached to an entangling gate, embedded.
ComplexMatrix over_rotation_unitary(const Gate& gate, double eps, int num_qubits);

/// Gate-by-gate channel evolution. Every entangling gate is followed by the
/// over-rotation and then lambda2q depolarizing; every single-qubit gate by
/// lambda1q depolarizing. The circuit's global phase has no effect.
DensityMatrix evolve(const Circuit& circuit, const NoiseModel& noise, const DensityMatrix& initial);

struct Distribution {
  std::vector<double> probs;
  std::optional<std::uint64_t> shots;  // empty for exact mode
  std::vector<std::uint64_t> counts;   // filled in shot mode

  static Distribution exact(std::vector<double> probs);
  std::size_t size() const { return probs.size(); }
  /// Throws std::invalid_argument unless entries lie in [0,1] and sum to 1.
  void validate(double tol = 1e-9) const;
};

/// Applies the per-qubit confusion matrices to ideal outcome probabilities.
std::vector<double> apply_confusion(const std::vector<double>& p, const std::vector<Confusion>& per_qubit);

/// Exact mode when shots is empty; otherwise a multinomial sample from the
/// stream keyed by seed.
Distribution measure(const DensityMatrix& rho, const NoiseModel& noise, std::optional<std::uint64_t> shots,
                     std::uint64_t seed);

/// (<ZI>, <IZ>, <ZZ>) for a two-qubit distribution, qubit 0 on the left.
std::array<double, 3> pauli_expectations(const Distribution& dist);
/// p_b = 1/4 (1 + s0 <ZI> + s1 <IZ> + s0 s1 <ZZ>) with s_q = +1 for bit 0.
std::vector<double> probabilities_from_expectations(const std::array<double, 3>& e);

/// {"shots": K, "seed": S, "counts": {"00": n, ...}}
std::string counts_json(const Distribution& dist, std::uint64_t seed);

/// Bitstring label of outcome b, qubit 0 first.
std::string outcome_label(std::size_t b, int num_qubits);

}  // namespace nscatter
