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
#include <vector>

#include "nscatter/circuit.hpp"
#include "nscatter/linalg.hpp"
#include "nscatter/spin.hpp"

namespace nscatter {

/// u = exp(i*global_phase) (k1a (x) k1b) exp(i(c1 XX + c2 YY + c3 ZZ)) (k2a (x) k2b)
/// with pi/4 >= c1 >= c2 >= |c3|, and c3 >= 0 whenever c1 = pi/4.
struct KakDecomposition {
  ComplexMatrix k1a, k1b, k2a, k2b;
  std::array<double, 3> coords{0.0, 0.0, 0.0};
  double global_phase = 0.0;

  ComplexMatrix reconstruct() const;
};

/// exp(i(c1 XX + c2 YY + c3 ZZ))
ComplexMatrix canonical_gate(const std::array<double, 3>& coords);

/// Magic-basis diagonalization followed by Weyl-chamber canonicalization.
/// Throws std::invalid_argument if u is not a 4x4 unitary within 1e-8.
KakDecomposition kak_decompose(const ComplexMatrix& u);

/// Tolerance on canonical coordinates when classifying entangling cost.
inline constexpr double kWeylClassTol = 1e-8;

/// Minimum number of CNOTs needed for the given canonical coordinates (0..3).
int entangling_cost(const std::array<double, 3>& coords);

/// Layered circuit of U3 and CNOT gates with entangling_cost(kak(u)) CNOTs
/// whose unitary equals u including global phase.
Circuit synthesize(const ComplexMatrix& u);

/// Circuit k concatenates the synthesized propagators 0..k.
std::vector<Circuit> sequence_circuits(const std::vector<CoarsePropagator>& propagators);

/// Circuit k synthesizes the product U_k ... U_0 directly.
std::vector<Circuit> compressed_circuits(const std::vector<CoarsePropagator>& propagators);

}  // namespace nscatter
