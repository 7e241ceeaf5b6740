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

#include <cmath>
#include <numbers>

#include "nscatter/synthesis.hpp"

namespace nscatter {
namespace {

constexpr double kPi = std::numbers::pi;

Gate ry(int q, double theta) { return Gate::u3(q, theta, 0.0, 0.0); }

// Entangling cores whose canonical class is fixed by the requested
// coordinates. Their own local frames are recovered with kak_decompose, so
// only the class (not the exact local structure) matters here.
Circuit entangling_core(const std::array<double, 3>& c, int cost) {
  Circuit core;
  switch (cost) {
    case 1:
      core.gates = {Gate::cnot(0, 1)};
      break;
    case 2:
      // CNOT (Rx(-2a) (x) Rz(-2b)) CNOT = exp(i(a XX + b ZZ))
      core.gates = {Gate::cnot(0, 1), Gate::rx(0, -2.0 * c[0]), Gate::rz(1, -2.0 * c[1]), Gate::cnot(0, 1)};
      break;
    case 3:
      // Class (c1, c2, c3) up to Weyl-group symmetry.
      core.gates = {Gate::cnot(1, 0),
                    Gate::rz(0, 2.0 * c[0] - kPi / 2.0),
                    ry(1, kPi / 2.0 - 2.0 * c[1]),
                    Gate::cnot(0, 1),
                    ry(1, -2.0 * c[2] - kPi / 2.0),
                    Gate::cnot(1, 0)};
      break;
    default:
      break;
  }
  return core;
}

void push_local(Circuit& circuit, int q, const ComplexMatrix& m) {
  const auto ang = u3_angles(m);
  circuit.gates.push_back(Gate::u3(q, ang.theta, ang.phi, ang.lambda));
  circuit.global_phase += ang.global_phase;
}

}  // namespace

Circuit synthesize(const ComplexMatrix& u) {
  const KakDecomposition kak = kak_decompose(u);
  const int cost = entangling_cost(kak.coords);

  Circuit out;
  out.global_phase = kak.global_phase;
  if (cost == 0) {
    push_local(out, 0, kak.k1a * kak.k2a);
    push_local(out, 1, kak.k1b * kak.k2b);
    return out;
  }

  // u = e^{i g} K1 A K2 and core = e^{i h} L1 A' L2 with A' ~ A, so
  // u ~ e^{i(g-h)} (K1 L1^dagger) core (L2^dagger K2).
  const Circuit core = entangling_core(kak.coords, cost);
  const KakDecomposition ck = kak_decompose(unitary_of(core));
  out.global_phase -= ck.global_phase;
  push_local(out, 0, ck.k2a.adjoint() * kak.k2a);
  push_local(out, 1, ck.k2b.adjoint() * kak.k2b);
  out.append(core);
  push_local(out, 0, kak.k1a * ck.k1a.adjoint());
  push_local(out, 1, kak.k1b * ck.k1b.adjoint());
  return layered(out);
}

std::vector<Circuit> sequence_circuits(const std::vector<CoarsePropagator>& propagators) {
  std::vector<Circuit> out;
  out.reserve(propagators.size());
  Circuit acc;
  for (std::size_t k = 0; k < propagators.size(); ++k) {
    Circuit block = synthesize(propagators[k].unitary);
    block.span = {static_cast<int>(k), static_cast<int>(k)};
    acc.append(block);
    out.push_back(acc);
  }
  return out;
}

std::vector<Circuit> compressed_circuits(const std::vector<CoarsePropagator>& propagators) {
  std::vector<Circuit> out;
  out.reserve(propagators.size());
  ComplexMatrix product = ComplexMatrix::identity(4);
  for (std::size_t k = 0; k < propagators.size(); ++k) {
    product = propagators[k].unitary * product;
    Circuit c = synthesize(product);
    c.span = {0, static_cast<int>(k)};
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace nscatter
