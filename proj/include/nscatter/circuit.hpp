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
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nscatter/linalg.hpp"

namespace nscatter {

// Bit ordering: basis index b = sum_q bit_q * 2^(n-1-q), so qubit 0 is the most
// significant bit and the leftmost kron factor. For two qubits b = 2*q0 + q1.

enum class GateKind { RX, RZ, U3, CNOT, CZ };

std::string to_string(GateKind kind);
GateKind gate_kind_from_string(const std::string& name);

struct Gate {
  GateKind kind = GateKind::U3;
  std::array<int, 2> qubits{0, -1};        // second entry -1 for single-qubit gates
  std::array<double, 3> angles{0.0, 0.0, 0.0};

  static Gate rx(int q, double theta) { return {GateKind::RX, {q, -1}, {theta, 0.0, 0.0}}; }
  static Gate rz(int q, double theta) { return {GateKind::RZ, {q, -1}, {theta, 0.0, 0.0}}; }
  static Gate u3(int q, double theta, double phi, double lambda) { return {GateKind::U3, {q, -1}, {theta, phi, lambda}}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}, {}}; }
  static Gate cz(int a, int b) { return {GateKind::CZ, {a, b}, {}}; }

  bool is_entangling() const { return kind == GateKind::CNOT || kind == GateKind::CZ; }
  int arity() const { return is_entangling() ? 2 : 1; }

  /// 2x2 matrix of a single-qubit gate or the 4x4 matrix of an entangling
  /// gate with its first listed qubit as the most significant bit.
  ComplexMatrix local_matrix() const;
};

bool operator==(const Gate& a, const Gate& b);

struct Circuit {
  int num_qubits = 2;
  std::vector<Gate> gates;
  double global_phase = 0.0;                 // radians; unitary_of includes exp(i*global_phase)
  std::pair<int, int> span{-1, -1};          // originating coarse-step indices, inclusive

  std::size_t entangling_count() const;
  void append(const Circuit& other);
};

/// Matrix of a gate embedded in an n-qubit register.
ComplexMatrix embed(const Gate& gate, int num_qubits);

/// Ordered product of gate embeddings, later gates on the left.
ComplexMatrix unitary_of(const Circuit& circuit);

/// |tr(a^dagger b)| / dim, insensitive to global phase.
double trace_fidelity(const ComplexMatrix& a, const ComplexMatrix& b);

struct SingleQubitAngles {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
  double global_phase = 0.0;
};

/// u = exp(i*global_phase) * U3(theta, phi, lambda).
SingleQubitAngles u3_angles(const ComplexMatrix& u);
ComplexMatrix u3_matrix(double theta, double phi, double lambda);

/// Merges runs of single-qubit gates and fills every slot around each
/// entangling gate with one U3 per qubit. Same unitary, including phase.
Circuit layered(const Circuit& circuit);

inline constexpr int kCircuitSchemaVersion = 1;

/// JSON lines: a header object {schema_version, num_qubits, global_phase, span}
/// followed by one {kind, qubits, angles} object per gate.
std::string circuit_to_jsonl(const Circuit& circuit);
Circuit circuit_from_jsonl(const std::string& text);

}  // namespace nscatter
