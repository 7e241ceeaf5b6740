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

#include "nscatter/mitigation.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nscatter/rng.hpp"

namespace nscatter {

ConfusionEstimate rcal_calibrate(const NoiseModel& noise, int num_qubits, std::optional<std::uint64_t> shots,
                                 std::uint64_t seed) {
  Circuit idle;
  idle.num_qubits = num_qubits;
  Circuit flip = idle;
  for (int q = 0; q < num_qubits; ++q) flip.gates.push_back(Gate::rx(q, std::numbers::pi));

  const DensityMatrix zero = DensityMatrix::basis(num_qubits, 0);
  const Distribution d0 =
      measure(evolve(idle, noise, zero), noise, shots, CounterRng::derive(seed, CounterRng::Domain::Calibration, {0}));
  const Distribution d1 =
      measure(evolve(flip, noise, zero), noise, shots, CounterRng::derive(seed, CounterRng::Domain::Calibration, {1}));

  ConfusionEstimate est;
  est.shots = shots;
  for (int q = 0; q < num_qubits; ++q) {
    const std::size_t mask = std::size_t{1} << (num_qubits - 1 - q);
    double read1_given0 = 0.0, read0_given1 = 0.0;
    for (std::size_t b = 0; b < d0.size(); ++b) {
      if (b & mask) read1_given0 += d0.probs[b];
      else read0_given1 += d1.probs[b];
    }
    est.per_qubit.push_back(asymmetric_confusion(read1_given0, read0_given1));
  }
  return est;
}

std::vector<double> clip_and_renormalize(std::vector<double> p) {
  double sum = 0.0;
  for (double& x : p) {
    x = std::max(0.0, x);
    sum += x;
  }
  if (!(sum > 0.0)) throw std::invalid_argument("clip_and_renormalize: no positive mass left");
  for (double& x : p) x /= sum;
  return p;
}

std::vector<double> rcal_correct_unclipped(const Distribution& dist, const ConfusionEstimate& est) {
  std::vector<Confusion> inverses;
  for (std::size_t q = 0; q < est.per_qubit.size(); ++q) {
    const Confusion& c = est.per_qubit[q];
    const double det = c[0][0] * c[1][1] - c[0][1] * c[1][0];
    if (std::abs(det) <= kMinConfusionDeterminant) {
      std::ostringstream msg;
      msg << "rcal_correct: confusion matrix of qubit " << q << " is near singular (det = " << det << ")";
      throw std::invalid_argument(msg.str());
    }
    inverses.push_back({{{c[1][1] / det, -c[0][1] / det}, {-c[1][0] / det, c[0][0] / det}}});
  }
  return apply_confusion(dist.probs, inverses);
}

Distribution rcal_correct(const Distribution& dist, const ConfusionEstimate& est) {
  Distribution out = dist;
  out.probs = clip_and_renormalize(rcal_correct_unclipped(dist, est));
  out.counts.clear();
  return out;
}

PauliFrame conjugate_through(const Gate& gate, const PauliFrame& in) {
  // Frame bits are indexed by position in gate.qubits: slot 0 is the
  // control (CNOT) or first listed qubit (CZ).
  PauliFrame f = in;
  if (gate.kind == GateKind::CNOT) {
    f.x1 ^= f.x0;
    f.z0 ^= f.z1;
  } else if (gate.kind == GateKind::CZ) {
    f.z0 ^= in.x1;
    f.z1 ^= in.x0;
  } else {
    throw std::invalid_argument("conjugate_through: not an entangling gate");
  }
  return f;
}

namespace {

Gate pauli_gate(int q, int x, int z) {
  constexpr double pi = std::numbers::pi;
  if (x && z) return Gate::u3(q, pi, pi / 2.0, pi / 2.0);  // Y
  if (x) return Gate::u3(q, pi, 0.0, pi);                  // X
  if (z) return Gate::u3(q, 0.0, 0.0, pi);                 // Z
  return Gate::u3(q, 0.0, 0.0, 0.0);
}

ComplexMatrix pauli_matrix(int x, int z) {
  if (x && z) return pauli::Y();
  if (x) return pauli::X();
  if (z) return pauli::Z();
  return pauli::I();
}

}  // namespace

TwirlSet randomized_compile(const Circuit& circuit, std::size_t n, std::uint64_t master_seed) {
  if (n == 0) throw std::invalid_argument("randomized_compile: need at least one randomization");
  TwirlSet set;
  set.base = circuit;
  for (std::size_t m = 0; m < n; ++m) {
    const std::uint64_t seed = CounterRng::derive(master_seed, CounterRng::Domain::Twirl, {static_cast<std::int64_t>(m)});
    CounterRng rng(seed);
    Circuit twirled;
    twirled.num_qubits = circuit.num_qubits;
    twirled.global_phase = circuit.global_phase;
    twirled.span = circuit.span;
    for (const auto& g : circuit.gates) {
      if (!g.is_entangling()) {
        twirled.gates.push_back(g);
        continue;
      }
      const auto draw = rng.below(16);
      const PauliFrame before{static_cast<int>(draw & 1), static_cast<int>((draw >> 1) & 1),
                              static_cast<int>((draw >> 2) & 1), static_cast<int>((draw >> 3) & 1)};
      const PauliFrame after = conjugate_through(g, before);
      const int a = g.qubits[0], b = g.qubits[1];
      twirled.gates.push_back(pauli_gate(a, before.x0, before.z0));
      twirled.gates.push_back(pauli_gate(b, before.x1, before.z1));
      twirled.gates.push_back(g);
      twirled.gates.push_back(pauli_gate(a, after.x0, after.z0));
      twirled.gates.push_back(pauli_gate(b, after.x1, after.z1));

      // after * G * before = exp(i omega) G; remove the sign.
      const ComplexMatrix gm = g.local_matrix();
      const ComplexMatrix lhs = kron(pauli_matrix(after.x0, after.z0), pauli_matrix(after.x1, after.z1)) * gm *
                                kron(pauli_matrix(before.x0, before.z0), pauli_matrix(before.x1, before.z1));
      twirled.global_phase -= std::arg((gm.adjoint() * lhs).trace());
    }
    set.members.push_back(layered(twirled));
    set.seeds.push_back(seed);
  }
  return set;
}

std::vector<double> purify_unclipped(const Distribution& dist, double lambda, std::size_t n_2q_gates) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw std::invalid_argument("purify: lambda must lie in (0,1]");
  const double decay = std::pow(lambda, static_cast<double>(n_2q_gates));
  if (decay < kMinPurifyDecay) {
    std::ostringstream msg;
    msg << "purify: lambda^N = " << decay << " is below " << kMinPurifyDecay << " (N = " << n_2q_gates << ")";
    throw std::invalid_argument(msg.str());
  }
  const std::size_t d = dist.size();
  if (d == 0 || !std::has_single_bit(d)) throw std::invalid_argument("purify: outcome count must be a power of two");
  // Walsh-Hadamard transform: E_s = sum_b (-1)^{|b & s|} p_b is the Z-string
  // expectation with Z on the qubits selected by s.
  auto sign = [](std::size_t a, std::size_t b) { return (std::popcount(a & b) & 1) ? -1.0 : 1.0; };
  std::vector<double> e(d, 0.0);
  for (std::size_t s = 0; s < d; ++s)
    for (std::size_t b = 0; b < d; ++b) e[s] += sign(s, b) * dist.probs[b];
  for (std::size_t s = 1; s < d; ++s) e[s] /= decay;
  std::vector<double> p(d, 0.0);
  for (std::size_t b = 0; b < d; ++b) {
    for (std::size_t s = 0; s < d; ++s) p[b] += sign(s, b) * e[s];
    p[b] /= static_cast<double>(d);
  }
  return p;
}

Distribution purify(const Distribution& dist, double lambda, std::size_t n_2q_gates) {
  Distribution out = dist;
  out.probs = clip_and_renormalize(purify_unclipped(dist, lambda, n_2q_gates));
  out.counts.clear();
  return out;
}

double lambda_from_process_fidelity(double fidelity, std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("lambda_from_process_fidelity: dimension must be at least 2");
  const double d2 = static_cast<double>(dim * dim);
  if (!(fidelity >= 1.0 / d2 && fidelity <= 1.0)) {
    std::ostringstream msg;
    msg << "lambda_from_process_fidelity: F = " << fidelity << " outside [1/dim^2, 1]";
    throw std::invalid_argument(msg.str());
  }
  return (d2 * fidelity - 1.0) / (d2 - 1.0);
}

}  // namespace nscatter
