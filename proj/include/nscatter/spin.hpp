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

#include <cstddef>
#include <string>
#include <vector>

#include "nscatter/linalg.hpp"
#include "nscatter/trajectory.hpp"

namespace nscatter {

// Coupled two-spin basis, in the order used for qubit states |00>,|01>,|10>,|11>:
//   0: |S=1,Sz=-1> = |dd>
//   1: |S=1,Sz= 0> = (|ud> + |du>)/sqrt2
//   2: |S=1,Sz=+1> = |uu>
//   3: |S=0,Sz= 0> = (|ud> - |du>)/sqrt2
// The product basis is (|uu>, |ud>, |du>, |dd>).
inline constexpr std::size_t kSinglet = 3;

/// Columns are the coupled states expressed in the product basis.
const ComplexMatrix& coupled_basis_change();

/// Spin-dependent potential in the coupled basis (MeV). Built in the product
/// basis and conjugated by coupled_basis_change().
ComplexMatrix build_vsd(const PotentialModel& model, const Vec3& r);

/// Same operator in the product basis.
ComplexMatrix build_vsd_product(const PotentialModel& model, const Vec3& r);

/// exp(-i dt V_SD(r)).
ComplexMatrix short_time_propagator(const PotentialModel& model, const Vec3& r, double dt);

struct CoarsePropagator {
  std::size_t index = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  ComplexMatrix unitary;
};

/// Time-ordered products of fine-step propagators, each fine step evaluated
/// at its left endpoint, later times multiplied on the left.
std::vector<CoarsePropagator> coarse_propagators(const PotentialModel& model, const Trajectory& traj,
                                                 std::size_t steps_per_coarse);

/// States psi_0 = initial, psi_k = U_{k-1} psi_{k-1}; returns propagators.size()+1 states.
std::vector<StateVector> exact_spin_evolution(const std::vector<CoarsePropagator>& propagators,
                                              const StateVector& initial);

/// JSON array of {index, t_start, t_end, re, im} with 4x4 re/im matrices.
std::string propagators_json(const std::vector<CoarsePropagator>& propagators);

}  // namespace nscatter
