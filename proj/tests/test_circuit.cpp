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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nscatter/circuit.hpp"
#include "nscatter/oracle.hpp"

namespace nscatter {
namespace {

constexpr double kPi = std::numbers::pi;

Circuit of(std::vector<Gate> gates) {
  Circuit c;
  c.gates = std::move(gates);
  return c;
}

TEST(UnitaryOf, EmptyCircuitIsIdentity) {
  EXPECT_EQ(max_abs_diff(unitary_of(Circuit{}), ComplexMatrix::identity(4)), 0.0);
}

TEST(UnitaryOf, CnotSwapsTenAndEleven) {
  const ComplexMatrix u = unitary_of(of({Gate::cnot(0, 1)}));
  const std::size_t perm[] = {0, 1, 3, 2};
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t r = 0; r < 4; ++r) EXPECT_EQ(u(r, c), Complex(perm[c] == r ? 1.0 : 0.0, 0.0));
  // Reversed control: |01> <-> |11>.
  const ComplexMatrix v = unitary_of(of({Gate::cnot(1, 0)}));
  EXPECT_EQ(v(3, 1), Complex(1.0, 0.0));
  EXPECT_EQ(v(1, 3), Complex(1.0, 0.0));
}

TEST(UnitaryOf, SingleQubitGatesActOnDocumentedFactor) {
  const Gate g = Gate::u3(1, 0.3, 0.2, -0.4);
  EXPECT_LE(max_abs_diff(unitary_of(of({g})), kron(ComplexMatrix::identity(2), g.local_matrix())), 1e-15);
  const Gate h = Gate::rx(0, 0.9);
  EXPECT_LE(max_abs_diff(unitary_of(of({h})), kron(h.local_matrix(), ComplexMatrix::identity(2))), 1e-15);
}

TEST(UnitaryOf, RandomCircuitsMatchDenseOracle) {
  CounterRng rng(41);
  for (int t = 0; t < 100; ++t) {
    const Circuit c = oracle::random_circuit(12, rng);
    const ComplexMatrix u = unitary_of(c);
    EXPECT_LE(max_abs_diff(u, oracle::statevector_unitary(c)), 1e-12);
    EXPECT_LE(unitarity_defect(u), 1e-10);
  }
  for (int n = 1; n <= 3; ++n) {
    const Circuit c = oracle::random_circuit(10, rng, std::max(n, 2));
    EXPECT_LE(max_abs_diff(unitary_of(c), oracle::statevector_unitary(c)), 1e-12);
  }
}

TEST(UnitaryOf, GlobalPhaseIsIncluded) {
  Circuit c;
  c.global_phase = 0.7;
  EXPECT_LE(max_abs_diff(unitary_of(c), ComplexMatrix::identity(4) * std::polar(1.0, 0.7)), 1e-15);
}

TEST(UnitaryOf, RejectsOutOfRangeQubits) {
  EXPECT_THROW(unitary_of(of({Gate::rx(2, 0.1)})), std::out_of_range);
  EXPECT_THROW(unitary_of(of({Gate::cnot(0, 5)})), std::out_of_range);
  EXPECT_THROW(unitary_of(of({Gate::cnot(1, 1)})), std::invalid_argument);
}

TEST(U3Angles, RecoverArbitraryUnitaryWithPhase) {
  CounterRng rng(42);
  for (int t = 0; t < 200; ++t) {
    const ComplexMatrix u = oracle::haar_unitary(2, rng);
    const auto a = u3_angles(u);
    EXPECT_LE(max_abs_diff(u3_matrix(a.theta, a.phi, a.lambda) * std::polar(1.0, a.global_phase), u), 1e-13);
  }
  // Diagonal and anti-diagonal edge cases.
  for (const ComplexMatrix& u : {pauli::Z(), pauli::X(), pauli::Y(), ComplexMatrix::identity(2)}) {
    const auto a = u3_angles(u);
    EXPECT_LE(max_abs_diff(u3_matrix(a.theta, a.phi, a.lambda) * std::polar(1.0, a.global_phase), u), 1e-15);
  }
}

TEST(Layered, PreservesUnitaryAndAlternatesLayers) {
  CounterRng rng(43);
  for (int t = 0; t < 50; ++t) {
    const Circuit c = oracle::random_circuit(15, rng);
    const Circuit l = layered(c);
    EXPECT_LE(max_abs_diff(unitary_of(l), unitary_of(c)), 1e-12);
    EXPECT_EQ(l.entangling_count(), c.entangling_count());
    // Exactly two U3 gates between consecutive entangling gates and at both ends.
    std::size_t run = 0;
    for (const auto& g : l.gates) {
      if (g.is_entangling()) {
        EXPECT_EQ(run, 2u);
        run = 0;
      } else {
        EXPECT_EQ(g.kind, GateKind::U3);
        ++run;
      }
    }
    EXPECT_EQ(run, 2u);
  }
  EXPECT_TRUE(layered(Circuit{}).gates.empty());
}

TEST(Jsonl, RoundTrip) {
  CounterRng rng(44);
  Circuit c = oracle::random_circuit(9, rng);
  c.span = {2, 5};
  const std::string text = circuit_to_jsonl(c);
  EXPECT_NE(text.find("\"schema_version\":1"), std::string::npos);
  const Circuit back = circuit_from_jsonl(text);
  EXPECT_EQ(back.span, c.span);
  ASSERT_EQ(back.gates.size(), c.gates.size());
  for (std::size_t i = 0; i < c.gates.size(); ++i) EXPECT_TRUE(back.gates[i] == c.gates[i]);
  EXPECT_EQ(back.global_phase, c.global_phase);
}

TEST(Jsonl, RejectsMalformedInput) {
  EXPECT_THROW(circuit_from_jsonl(""), std::invalid_argument);
  EXPECT_THROW(circuit_from_jsonl("{\"schema_version\":2,\"num_qubits\":2,\"global_phase\":0,\"span\":[-1,-1]}\n"),
               std::invalid_argument);
  EXPECT_THROW(circuit_from_jsonl("{\"schema_version\":1,\"num_qubits\":2,\"global_phase\":0,\"span\":[-1,-1]}\n"
                                  "{\"kind\":\"swap\",\"qubits\":[0,1],\"angles\":[]}\n"),
               std::invalid_argument);
}

TEST(Gate, CzIsSymmetricAndRxIsPeriodic) {
  EXPECT_LE(max_abs_diff(unitary_of(of({Gate::cz(0, 1)})), unitary_of(of({Gate::cz(1, 0)}))), 1e-15);
  EXPECT_LE(max_abs_diff(Gate::rx(0, 4 * kPi).local_matrix(), ComplexMatrix::identity(2)), 1e-14);
}

}  // namespace
}  // namespace nscatter
