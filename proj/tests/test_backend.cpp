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
#include <numeric>

#include <json.hpp>

#include "nscatter/backend.hpp"
#include "nscatter/oracle.hpp"

namespace nscatter {
namespace {

Circuit of(std::vector<Gate> gates) {
  Circuit c;
  c.gates = std::move(gates);
  return c;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(Evolve, NoiselessMatchesStatevector) {
  CounterRng rng(61);
  for (int t = 0; t < 30; ++t) {
    const Circuit c = oracle::random_circuit(14, rng);
    const StateVector psi = oracle::random_state(4, rng);
    const DensityMatrix rho = evolve(c, NoiseModel::ideal(), DensityMatrix::pure(psi));
    EXPECT_NEAR(rho.fidelity(oracle::run_statevector(c, psi)), 1.0, 1e-12);
  }
}

TEST(Evolve, DepolarizedCnotOnZeroState) {
  NoiseModel noise = NoiseModel::ideal();
  noise.lambda2q = 0.5;
  const DensityMatrix rho = evolve(of({Gate::cnot(0, 1)}), noise, DensityMatrix::basis(2, 0));
  const auto p = rho.populations();
  EXPECT_NEAR(p[0], 0.625, 1e-15);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(p[i], 0.125, 1e-15);
}

TEST(Evolve, MatchesSuperoperatorOracle) {
  CounterRng rng(62);
  NoiseModel noise = NoiseModel::ideal();
  noise.lambda2q = 0.93;
  noise.lambda1q = 0.995;
  for (double eps : {0.0, 0.05, 0.3}) {
    noise.over_rotation = eps;
    for (int t = 0; t < 10; ++t) {
      const Circuit c = oracle::random_circuit(12, rng);
      const DensityMatrix rho0 = DensityMatrix::pure(oracle::random_state(4, rng));
      const DensityMatrix a = evolve(c, noise, rho0);
      EXPECT_LE(max_abs_diff(a.rho, oracle::superoperator_evolve(c, noise, rho0.rho)), 1e-12);
      EXPECT_LE(hermiticity_defect(a.rho), 1e-14);
      EXPECT_NEAR(a.rho.trace().real(), 1.0, 1e-12);
    }
  }
}

TEST(Evolve, IsLinearInTheInitialState) {
  CounterRng rng(63);
  NoiseModel noise = NoiseModel::ideal();
  noise.lambda2q = 0.9;
  noise.over_rotation = 0.1;
  const Circuit c = oracle::random_circuit(10, rng);
  const DensityMatrix a = DensityMatrix::pure(oracle::random_state(4, rng));
  const DensityMatrix b = DensityMatrix::pure(oracle::random_state(4, rng));
  const DensityMatrix mix{a.rho * 0.3 + b.rho * 0.7};
  const ComplexMatrix lhs = evolve(c, noise, mix).rho;
  const ComplexMatrix rhs = evolve(c, noise, a).rho * 0.3 + evolve(c, noise, b).rho * 0.7;
  EXPECT_LE(max_abs_diff(lhs, rhs), 1e-13);
}

TEST(Evolve, ProcessFidelityOfOneGate) {
  NoiseModel noise = NoiseModel::ideal();
  noise.lambda2q = 0.97;
  noise.over_rotation = 0.05;
  const Circuit c = of({Gate::cnot(0, 1)});
  // Choi overlap assembled from the images of the 16 Pauli strings.
  const ComplexMatrix u = unitary_of(c);
  double overlap = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const ComplexMatrix p = kron(pauli::by_index(a), pauli::by_index(b));
      const ComplexMatrix out = evolve(c, noise, DensityMatrix{p}).rho;
      overlap += (u * p * u.adjoint() * out).trace().real() / 64.0;
    }
  EXPECT_NEAR(overlap, entangling_process_fidelity(noise), 1e-12);
  EXPECT_NEAR(entangling_process_fidelity(noise), 0.97 * std::pow(std::cos(0.025), 2) + 0.03 / 16.0, 1e-15);
}

TEST(Measure, ExactReadoutOfABasisState) {
  const Distribution d = measure(DensityMatrix::basis(2, 1), NoiseModel::ideal(), std::nullopt, 0);
  EXPECT_EQ(d.probs, (std::vector<double>{0.0, 1.0, 0.0, 0.0}));
  EXPECT_FALSE(d.shots.has_value());
}

TEST(Measure, SymmetricConfusionOnBothQubits) {
  NoiseModel noise = NoiseModel::ideal();
  noise.confusion = {symmetric_confusion(0.1), symmetric_confusion(0.1)};
  const Distribution d = measure(DensityMatrix::basis(2, 1), noise, std::nullopt, 0);
  EXPECT_NEAR(d.probs[0], 0.09, 1e-15);
  EXPECT_NEAR(d.probs[1], 0.81, 1e-15);
  EXPECT_NEAR(d.probs[2], 0.01, 1e-15);
  EXPECT_NEAR(d.probs[3], 0.09, 1e-15);
}

TEST(Measure, AsymmetricConfusionPicksTheRightColumn) {
  NoiseModel noise = NoiseModel::ideal();
  noise.confusion = {asymmetric_confusion(0.02, 0.1), identity_confusion()};
  const auto p0 = measure(DensityMatrix::basis(2, 0), noise, std::nullopt, 0).probs;
  const auto p1 = measure(DensityMatrix::basis(2, 2), noise, std::nullopt, 0).probs;
  EXPECT_NEAR(p0[2], 0.02, 1e-15);
  EXPECT_NEAR(p1[0], 0.1, 1e-15);
}

TEST(Measure, ShotsAreDeterministicPerSeed) {
  CounterRng rng(64);
  const DensityMatrix rho = DensityMatrix::pure(oracle::random_state(4, rng));
  const NoiseModel noise = NoiseModel::ideal();
  const Distribution a = measure(rho, noise, 1000, 7), b = measure(rho, noise, 1000, 7), c = measure(rho, noise, 1000, 8);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_NE(a.counts, c.counts);
  EXPECT_EQ(std::accumulate(a.counts.begin(), a.counts.end(), std::uint64_t{0}), 1000u);
  EXPECT_NO_THROW(a.validate());
}

TEST(Measure, MillionShotsConverge) {
  CounterRng rng(65);
  NoiseModel noise = NoiseModel::ideal();
  noise.confusion = {asymmetric_confusion(0.03, 0.07), symmetric_confusion(0.02)};
  const DensityMatrix rho = DensityMatrix::pure(oracle::random_state(4, rng));
  const auto exact = measure(rho, noise, std::nullopt, 0).probs;
  const auto sampled = measure(rho, noise, 1000000, 99).probs;
  double tvd = 0.0;
  for (std::size_t i = 0; i < 4; ++i) tvd += 0.5 * std::abs(exact[i] - sampled[i]);
  EXPECT_LT(tvd, 5e-3);
}

TEST(Measure, RejectsZeroShots) {
  EXPECT_THROW(measure(DensityMatrix::basis(2, 0), NoiseModel::ideal(), 0, 1), std::invalid_argument);
}

TEST(PauliExpectations, RoundTripThroughProbabilities) {
  const Distribution d = Distribution::exact({0.1, 0.2, 0.3, 0.4});
  const auto e = pauli_expectations(d);
  EXPECT_NEAR(e[0], 0.1 + 0.2 - 0.3 - 0.4, 1e-15);
  EXPECT_NEAR(e[1], 0.1 - 0.2 + 0.3 - 0.4, 1e-15);
  EXPECT_NEAR(e[2], 0.1 - 0.2 - 0.3 + 0.4, 1e-15);
  EXPECT_LE(max_diff(probabilities_from_expectations(e), d.probs), 1e-15);
}

TEST(CountsJson, LabelsQubitZeroFirst) {
  Distribution d = measure(DensityMatrix::basis(2, 2), NoiseModel::ideal(), 50, 3);
  const auto j = nlohmann::json::parse(counts_json(d, 3));
  EXPECT_EQ(j["shots"], 50);
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["counts"]["10"], 50);
  EXPECT_EQ(j["counts"]["01"], 0);
  EXPECT_EQ(outcome_label(1, 3), "001");
  EXPECT_THROW(counts_json(Distribution::exact({1.0, 0.0}), 0), std::invalid_argument);
}

TEST(NoiseModel, ValidationRejectsBadParameters) {
  NoiseModel n = NoiseModel::ideal();
  EXPECT_NO_THROW(n.validate());
  n.lambda2q = 1.2;
  EXPECT_THROW(n.validate(), std::invalid_argument);
  n = NoiseModel::ideal();
  n.confusion[0] = {{{0.9, 0.2}, {0.2, 0.8}}};
  EXPECT_THROW(n.validate(), std::invalid_argument);
  n = NoiseModel::ideal();
  EXPECT_THROW(n.confusion_for(2), std::out_of_range);
}

}  // namespace
}  // namespace nscatter
