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

#include "nscatter/mitigation.hpp"
#include "nscatter/oracle.hpp"

namespace nscatter {
namespace {

double tvd(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += 0.5 * std::abs(a[i] - b[i]);
  return s;
}

std::vector<double> ideal_probs(const Circuit& c) {
  const StateVector psi = oracle::run_statevector(c, StateVector::basis(4, 0));
  std::vector<double> p;
  for (const auto& a : psi.amplitudes) p.push_back(std::norm(a));
  return p;
}

Circuit with_cnots(std::size_t n_cnot, CounterRng& rng) {
  Circuit c;
  for (std::size_t k = 0; k < n_cnot; ++k) {
    for (int q = 0; q < 2; ++q)
      c.gates.push_back(Gate::u3(q, 3.0 * rng.uniform(), 6.0 * rng.uniform(), 6.0 * rng.uniform()));
    c.gates.push_back(k % 2 ? Gate::cnot(1, 0) : Gate::cnot(0, 1));
  }
  return c;
}

// --- readout calibration ---

TEST(Rcal, ExactCalibrationRecoversTheConfusionMatrices) {
  NoiseModel noise = NoiseModel::ideal();
  noise.confusion = {asymmetric_confusion(0.03, 0.08), symmetric_confusion(0.1)};
  const ConfusionEstimate est = rcal_calibrate(noise, 2, std::nullopt, 1);
  for (int q = 0; q < 2; ++q)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) EXPECT_NEAR(est.per_qubit[q][i][j], noise.confusion[q][i][j], 1e-14);
}

TEST(Rcal, IdentityEstimateIsANoOp) {
  const ConfusionEstimate est{{identity_confusion(), identity_confusion()}, std::nullopt};
  const Distribution d = Distribution::exact({0.1, 0.2, 0.3, 0.4});
  const auto out = rcal_correct(d, est).probs;
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(out[i], d.probs[i], 1e-15);
}

TEST(Rcal, InvertsSymmetricReadoutError) {
  NoiseModel noise = NoiseModel::ideal();
  noise.confusion = {symmetric_confusion(0.1), symmetric_confusion(0.1)};
  const ConfusionEstimate est = rcal_calibrate(noise, 2, std::nullopt, 1);
  const auto out = rcal_correct(measure(DensityMatrix::basis(2, 1), noise, std::nullopt, 0), est).probs;
  EXPECT_NEAR(out[1], 1.0, 1e-12);
  EXPECT_NEAR(out[0] + out[2] + out[3], 0.0, 1e-12);
}

TEST(Rcal, AsymmetricReadoutWithShots) {
  CounterRng rng(71);
  NoiseModel noise = NoiseModel::ideal();
  noise.confusion = {asymmetric_confusion(0.02, 0.06), asymmetric_confusion(0.05, 0.01)};
  const ConfusionEstimate est = rcal_calibrate(noise, 2, 1000000, 5);
  for (int t = 0; t < 5; ++t) {
    const StateVector psi = oracle::random_state(4, rng);
    std::vector<double> ideal;
    for (const auto& a : psi.amplitudes) ideal.push_back(std::norm(a));
    const Distribution raw = measure(DensityMatrix::pure(psi), noise, 1000000, 100 + t);
    EXPECT_LT(tvd(rcal_correct(raw, est).probs, ideal), 5e-3);
  }
}

TEST(Rcal, ApplyThenCorrectIsIdentity) {
  CounterRng rng(72);
  const ConfusionEstimate est{{asymmetric_confusion(0.04, 0.09), symmetric_confusion(0.07)}, std::nullopt};
  for (int t = 0; t < 20; ++t) {
    std::vector<double> p(4);
    double s = 0.0;
    for (double& x : p) s += (x = rng.uniform());
    for (double& x : p) x /= s;
    const auto noisy = apply_confusion(p, est.per_qubit);
    const auto back = rcal_correct_unclipped(Distribution::exact(noisy), est);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(back[i], p[i], 1e-14);
  }
}

TEST(Rcal, NegativeEntriesAreClipped) {
  const ConfusionEstimate est{{symmetric_confusion(0.1), symmetric_confusion(0.1)}, std::nullopt};
  // A sampled distribution that lies outside the image of the confusion map.
  const Distribution d = Distribution::exact({0.97, 0.03, 0.0, 0.0});
  const auto unclipped = rcal_correct_unclipped(d, est);
  EXPECT_LT(*std::min_element(unclipped.begin(), unclipped.end()), 0.0);
  const Distribution out = rcal_correct(d, est);
  EXPECT_NO_THROW(out.validate(1e-12));
  for (double x : out.probs) EXPECT_GE(x, 0.0);
}

TEST(Rcal, RejectsSingularEstimates) {
  const ConfusionEstimate est{{symmetric_confusion(0.5), identity_confusion()}, std::nullopt};
  EXPECT_THROW(rcal_correct(Distribution::exact({0.25, 0.25, 0.25, 0.25}), est), std::invalid_argument);
}

TEST(ClipAndRenormalize, Basic) {
  const auto p = clip_and_renormalize({0.5, -0.1, 0.3, 0.2});
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_EQ(p[1], 0.0);
  EXPECT_THROW(clip_and_renormalize({-1.0, 0.0}), std::invalid_argument);
}

// --- randomized compiling ---

TEST(ConjugateThrough, CnotAndCzRules) {
  const PauliFrame x0 = conjugate_through(Gate::cnot(0, 1), {1, 0, 0, 0});
  EXPECT_EQ(x0.x0, 1);
  EXPECT_EQ(x0.x1, 1);
  const PauliFrame z1 = conjugate_through(Gate::cnot(0, 1), {0, 0, 0, 1});
  EXPECT_EQ(z1.z0, 1);
  EXPECT_EQ(z1.z1, 1);
  const PauliFrame cz = conjugate_through(Gate::cz(0, 1), {1, 0, 0, 0});
  EXPECT_EQ(cz.x0, 1);
  EXPECT_EQ(cz.z1, 1);
  EXPECT_EQ(cz.z0, 0);
}

TEST(RandomizedCompile, MembersImplementTheSameUnitary) {
  CounterRng rng(73);
  for (int t = 0; t < 30; ++t) {
    const Circuit c = oracle::random_circuit(12, rng);
    const TwirlSet set = randomized_compile(c, 20, 1000 + t);
    ASSERT_EQ(set.size(), 20u);
    const ComplexMatrix u = unitary_of(c);
    const std::size_t depth = layered(c).gates.size();
    for (const auto& m : set.members) {
      EXPECT_LE(max_abs_diff(unitary_of(m), u), 1e-10);
      EXPECT_EQ(m.entangling_count(), c.entangling_count());
      EXPECT_EQ(m.gates.size(), depth);
    }
  }
}

TEST(RandomizedCompile, SeedsAreDerivedPerMember) {
  CounterRng rng(74);
  const Circuit c = with_cnots(4, rng);
  const TwirlSet a = randomized_compile(c, 5, 9), b = randomized_compile(c, 5, 9);
  for (std::size_t m = 0; m < 5; ++m) {
    EXPECT_EQ(a.seeds[m], CounterRng::derive(9, CounterRng::Domain::Twirl, {static_cast<std::int64_t>(m)}));
    EXPECT_EQ(a.members[m].gates, b.members[m].gates);
  }
  EXPECT_THROW(randomized_compile(c, 0, 9), std::invalid_argument);
}

// Reference density-matrix evolution in which each entangling gate's coherent
// error has been replaced by its Pauli twirl: with probability sin^2(eps/2)
// the generator Pauli string is applied.
ComplexMatrix twirled_reference(const Circuit& c, double eps) {
  ComplexMatrix rho(4, 4);
  rho(0, 0) = 1.0;
  const double p = std::pow(std::sin(eps / 2.0), 2);
  for (const auto& g : c.gates) {
    const ComplexMatrix u = embed(g, 2);
    rho = u * rho * u.adjoint();
    if (!g.is_entangling()) continue;
    ComplexMatrix pa = pauli::Z(), pb = g.kind == GateKind::CNOT ? pauli::X() : pauli::Z();
    const ComplexMatrix s = g.qubits[0] == 0 ? kron(pa, pb) : kron(pb, pa);
    rho = rho * (1.0 - p) + s * rho * s * p;
  }
  return rho;
}

TEST(RandomizedCompile, AverageTailorsCoherentErrorIntoPauliNoise) {
  CounterRng rng(75);
  NoiseModel noise = NoiseModel::ideal();
  noise.over_rotation = 0.3;
  for (int t = 0; t < 5; ++t) {
    Circuit c = oracle::random_circuit(10, rng);
    const TwirlSet set = randomized_compile(c, 3000, 500 + t);
    ComplexMatrix avg(4, 4);
    for (const auto& m : set.members) avg += evolve(m, noise, DensityMatrix::basis(2, 0)).rho;
    avg *= 1.0 / static_cast<double>(set.size());
    const ComplexMatrix ref = twirled_reference(c, noise.over_rotation);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(avg(i, i).real(), ref(i, i).real(), 0.02);
  }
}

TEST(RandomizedCompile, ReducesCoherentErrorOnMostCircuits) {
  CounterRng rng(76);
  NoiseModel noise = NoiseModel::ideal();
  noise.over_rotation = 0.15;
  int improved = 0;
  const int trials = 50;
  for (int t = 0; t < trials; ++t) {
    const Circuit c = with_cnots(8, rng);
    const auto ideal = ideal_probs(c);
    const auto bare = measure(evolve(c, noise, DensityMatrix::basis(2, 0)), noise, std::nullopt, 0).probs;
    const TwirlSet set = randomized_compile(c, 20, 900 + t);
    std::vector<double> avg(4, 0.0);
    for (const auto& m : set.members) {
      const auto p = measure(evolve(m, noise, DensityMatrix::basis(2, 0)), noise, std::nullopt, 0).probs;
      for (std::size_t i = 0; i < 4; ++i) avg[i] += p[i] / 20.0;
    }
    if (tvd(avg, ideal) <= tvd(bare, ideal)) ++improved;
  }
  EXPECT_GE(improved, trials * 8 / 10);
}

// --- purification ---

TEST(Purify, UndoesGlobalDepolarizingExactly) {
  CounterRng rng(77);
  NoiseModel noise = NoiseModel::ideal();
  noise.lambda2q = 0.9;
  for (std::size_t n : {1u, 3u, 6u, 12u}) {
    const Circuit c = with_cnots(n, rng);
    const Distribution raw = measure(evolve(c, noise, DensityMatrix::basis(2, 0)), noise, std::nullopt, 0);
    const auto out = purify_unclipped(raw, 0.9, n);
    const auto ideal = ideal_probs(c);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(out[i], ideal[i], 1e-12);
  }
}

TEST(Purify, HandExample) {
  const Distribution d = Distribution::exact({0.625, 0.125, 0.125, 0.125});
  const auto out = purify(d, 0.5, 1).probs;
  EXPECT_NEAR(out[0], 1.0, 1e-15);
  EXPECT_NEAR(out[3], 0.0, 1e-15);
  const auto uniform = purify(Distribution::exact({0.25, 0.25, 0.25, 0.25}), 0.7, 4).probs;
  for (double x : uniform) EXPECT_NEAR(x, 0.25, 1e-15);
  // No entangling gates, nothing to undo.
  const auto same = purify(Distribution::exact({0.1, 0.2, 0.3, 0.4}), 0.7, 0).probs;
  EXPECT_NEAR(same[2], 0.3, 1e-15);
}

TEST(Purify, ClipsOverAmplifiedNoise) {
  const Distribution d = Distribution::exact({0.4, 0.1, 0.3, 0.2});
  const auto unclipped = purify_unclipped(d, 0.5, 2);
  EXPECT_LT(*std::min_element(unclipped.begin(), unclipped.end()), 0.0);
  EXPECT_NO_THROW(purify(d, 0.5, 2).validate(1e-12));
}

TEST(Purify, RejectsBadParameters) {
  const Distribution d = Distribution::exact({0.25, 0.25, 0.25, 0.25});
  EXPECT_THROW(purify(d, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(purify(d, 1.5, 1), std::invalid_argument);
  EXPECT_THROW(purify(d, 0.5, 40), std::invalid_argument);
}

TEST(LambdaFromFidelity, Examples) {
  EXPECT_NEAR(lambda_from_process_fidelity(1.0, 4), 1.0, 1e-15);
  EXPECT_NEAR(lambda_from_process_fidelity(1.0 / 16.0, 4), 0.0, 1e-15);
  EXPECT_NEAR(lambda_from_process_fidelity(0.5, 2), 1.0 / 3.0, 1e-15);
  for (double lam : {0.5, 0.9, 0.97}) {
    NoiseModel n = NoiseModel::ideal();
    n.lambda2q = lam;
    EXPECT_NEAR(lambda_from_process_fidelity(entangling_process_fidelity(n), 4), lam, 1e-14);
  }
}

}  // namespace
}  // namespace nscatter
