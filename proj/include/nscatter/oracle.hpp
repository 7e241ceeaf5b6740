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

// Brute-force reference implementations. Each one takes a different route
// from the production code so the two can be checked against each other.

#include <cstdint>
#include <ostream>
#include <vector>

#include "nscatter/backend.hpp"
#include "nscatter/circuit.hpp"
#include "nscatter/linalg.hpp"
#include "nscatter/rng.hpp"
#include "nscatter/tomography.hpp"
#include "nscatter/trajectory.hpp"

namespace nscatter::oracle {

/// sum_{k < terms} (-i theta h)^k / k!
ComplexMatrix taylor_exp(const ComplexMatrix& h, double theta, int terms = 30);

/// (a (x) b)[i*rb + k][j*cb + l] = a[i][j] b[k][l], entry by entry.
ComplexMatrix kron_by_index(const ComplexMatrix& a, const ComplexMatrix& b);

/// factors[n-1] * ... * factors[0]
ComplexMatrix ordered_product(const std::vector<ComplexMatrix>& factors);

/// Central difference of V_SI along each axis.
Vec3 finite_difference_force(const PotentialModel& model, const Vec3& r, double h = 1e-5);

/// V_SD assembled element by element in the product basis from
/// <ab|(s1.n)(s2.n)|cd> = (s.n)_ac (s.n)_bd, then projected on hand-written
/// Clebsch-Gordan vectors.
ComplexMatrix vsd_by_elements(const PotentialModel& model, const Vec3& r);

/// Applies each gate to every basis column by explicit bit manipulation.
ComplexMatrix statevector_unitary(const Circuit& circuit);

/// Runs the circuit on a state vector.
StateVector run_statevector(const Circuit& circuit, const StateVector& initial);

/// Noisy evolution through 16x16 (or 4^n x 4^n) superoperators acting on vec(rho).
ComplexMatrix superoperator_evolve(const Circuit& circuit, const NoiseModel& noise, const ComplexMatrix& rho);

/// Rotated-setting probabilities computed by mixing amplitude pairs directly.
TomographyRecord statevector_record(const StateVector& psi);

/// Haar unitary from the QR decomposition of a complex Gaussian matrix.
ComplexMatrix haar_unitary(std::size_t dim, CounterRng& rng);
ComplexMatrix random_hermitian(std::size_t dim, CounterRng& rng);
StateVector random_state(std::size_t dim, CounterRng& rng);
/// Random circuit of `length` gates drawn from every gate kind.
Circuit random_circuit(std::size_t length, CounterRng& rng, int num_qubits = 2);
/// Random local unitary on one qubit.
ComplexMatrix random_su2(CounterRng& rng);

/// Runs the reference comparisons and prints one line per check.
/// Returns true when every check passes.
bool run_suite(std::ostream& out, std::uint64_t seed);

}  // namespace nscatter::oracle
