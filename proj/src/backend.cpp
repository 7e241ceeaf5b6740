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

#include "nscatter/backend.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "nscatter/rng.hpp"

namespace nscatter {

Confusion identity_confusion() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }

Confusion symmetric_confusion(double eps) { return asymmetric_confusion(eps, eps); }

Confusion asymmetric_confusion(double p10, double p01) { return {{{1.0 - p10, p01}, {p10, 1.0 - p01}}}; }

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const std::size_t d = psi.dim();
  ComplexMatrix rho(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) rho(i, j) = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
  return {rho};
}

DensityMatrix DensityMatrix::basis(int num_qubits, std::size_t index) {
  return pure(StateVector::basis(std::size_t{1} << num_qubits, index));
}

int DensityMatrix::num_qubits() const { return std::countr_zero(rho.rows()); }

std::vector<double> DensityMatrix::populations() const {
  std::vector<double> p(rho.rows());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::max(0.0, rho(i, i).real());
  return p;
}

double DensityMatrix::fidelity(const StateVector& psi) const {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < psi.dim(); ++i)
    for (std::size_t j = 0; j < psi.dim(); ++j) acc += std::conj(psi.amplitudes[i]) * rho(i, j) * psi.amplitudes[j];
  return acc.real();
}

NoiseModel NoiseModel::ideal(int num_qubits) {
  NoiseModel n;
  n.confusion.assign(num_qubits, identity_confusion());
  return n;
}

void NoiseModel::validate() const {
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!unit(lambda2q)) throw std::invalid_argument("noise: lambda2q must lie in [0,1]");
  if (!unit(lambda1q)) throw std::invalid_argument("noise: lambda1q must lie in [0,1]");
  if (!std::isfinite(over_rotation)) throw std::invalid_argument("noise: over_rotation must be finite");
  for (std::size_t q = 0; q < confusion.size(); ++q) {
    const auto& c = confusion[q];
    for (int j = 0; j < 2; ++j) {
      if (!unit(c[0][j]) || !unit(c[1][j]))
        throw std::invalid_argument("noise: confusion entries must lie in [0,1] (qubit " + std::to_string(q) + ")");
      if (std::abs(c[0][j] + c[1][j] - 1.0) > 1e-12)
        throw std::invalid_argument("noise: confusion columns must sum to 1 (qubit " + std::to_string(q) + ")");
    }
  }
}

const Confusion& NoiseModel::confusion_for(int qubit) const {
  if (qubit < 0 || static_cast<std::size_t>(qubit) >= confusion.size()) {
    throw std::out_of_range("noise: no confusion matrix for qubit " + std::to_string(qubit));
  }
  return confusion[qubit];
}

double entangling_process_fidelity(const NoiseModel& noise) {
  const double c = std::cos(noise.over_rotation / 2.0);
  return noise.lambda2q * c * c + (1.0 - noise.lambda2q) / 16.0;
}

ComplexMatrix over_rotation_unitary(const Gate& gate, double eps, int num_qubits) {
  const int dim = 1 << num_qubits;
  ComplexMatrix gen = ComplexMatrix::identity(1);
  for (int q = 0; q < num_qubits; ++q) {
    ComplexMatrix p = pauli::I();
    if (q == gate.qubits[0]) p = pauli::Z();
    if (q == gate.qubits[1]) p = gate.kind == GateKind::CNOT ? pauli::X() : pauli::Z();
    gen = kron(gen, p);
  }
  // gen squares to the identity, so the exponential is closed form.
  return ComplexMatrix::identity(dim) * std::cos(eps / 2.0) + gen * Complex{0.0, -std::sin(eps / 2.0)};
}

namespace {

void depolarize(ComplexMatrix& rho, double lambda) {
  if (lambda == 1.0) return;
  const Complex mixed = rho.trace() * ((1.0 - lambda) / static_cast<double>(rho.rows()));
  rho *= lambda;
  for (std::size_t i = 0; i < rho.rows(); ++i) rho(i, i) += mixed;
}

}  // namespace

DensityMatrix evolve(const Circuit& circuit, const NoiseModel& noise, const DensityMatrix& initial) {
  const int n = circuit.num_qubits;
  if (initial.rho.rows() != (std::size_t{1} << n)) throw std::invalid_argument("evolve: state dimension mismatch");
  ComplexMatrix rho = initial.rho;
  for (const auto& g : circuit.gates) {
    ComplexMatrix u = embed(g, n);
    if (g.is_entangling() && noise.over_rotation != 0.0) u = over_rotation_unitary(g, noise.over_rotation, n) * u;
    rho = u * rho * u.adjoint();
    depolarize(rho, g.is_entangling() ? noise.lambda2q : noise.lambda1q);
  }
  // Re-symmetrize so rounding never leaves a visible anti-Hermitian part.
  return {(rho + rho.adjoint()) * 0.5};
}

Distribution Distribution::exact(std::vector<double> probs) { return {std::move(probs), std::nullopt, {}}; }

void Distribution::validate(double tol) const {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= -tol && p <= 1.0 + tol)) throw std::invalid_argument("distribution entry outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol) throw std::invalid_argument("distribution does not sum to 1");
}

std::vector<double> apply_confusion(const std::vector<double>& p, const std::vector<Confusion>& per_qubit) {
  const int n = std::countr_zero(p.size());
  if (static_cast<int>(per_qubit.size()) < n) throw std::invalid_argument("apply_confusion: missing confusion matrices");
  std::vector<double> q = p;
  for (int k = 0; k < n; ++k) {
    const std::size_t mask = std::size_t{1} << (n - 1 - k);
    const Confusion& c = per_qubit[k];
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (i & mask) continue;
      const double p0 = q[i], p1 = q[i | mask];
      q[i] = c[0][0] * p0 + c[0][1] * p1;
      q[i | mask] = c[1][0] * p0 + c[1][1] * p1;
    }
  }
  return q;
}

Distribution measure(const DensityMatrix& rho, const NoiseModel& noise, std::optional<std::uint64_t> shots,
                     std::uint64_t seed) {
  std::vector<double> q = apply_confusion(rho.populations(), noise.confusion);
  double sum = 0.0;
  for (double x : q) sum += x;
  for (double& x : q) x /= sum;
  if (!shots) return Distribution::exact(std::move(q));
  if (*shots == 0) throw std::invalid_argument("measure: shots must be at least 1");

  CounterRng rng(seed);
  Distribution out;
  out.shots = shots;
  out.counts = sample_counts(q, *shots, rng);
  out.probs.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out.probs[i] = static_cast<double>(out.counts[i]) / static_cast<double>(*shots);
  return out;
}

std::array<double, 3> pauli_expectations(const Distribution& dist) {
  if (dist.size() != 4) throw std::invalid_argument("pauli_expectations: expected a two-qubit distribution");
  const auto& p = dist.probs;
  return {p[0] + p[1] - p[2] - p[3], p[0] - p[1] + p[2] - p[3], p[0] - p[1] - p[2] + p[3]};
}

std::vector<double> probabilities_from_expectations(const std::array<double, 3>& e) {
  std::vector<double> p(4);
  for (std::size_t b = 0; b < 4; ++b) {
    const double s0 = (b & 2) ? -1.0 : 1.0;
    const double s1 = (b & 1) ? -1.0 : 1.0;
    p[b] = 0.25 * (1.0 + s0 * e[0] + s1 * e[1] + s0 * s1 * e[2]);
  }
  return p;
}

std::string outcome_label(std::size_t b, int num_qubits) {
  std::string s(num_qubits, '0');
  for (int q = 0; q < num_qubits; ++q)
    if ((b >> (num_qubits - 1 - q)) & 1U) s[q] = '1';
  return s;
}

std::string counts_json(const Distribution& dist, std::uint64_t seed) {
  if (!dist.shots) throw std::invalid_argument("counts_json: exact distributions carry no counts");
  const int n = std::countr_zero(dist.size());
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (std::size_t b = 0; b < dist.counts.size(); ++b) counts[outcome_label(b, n)] = dist.counts[b];
  nlohmann::ordered_json j = {{"shots", *dist.shots}, {"seed", seed}, {"counts", counts}};
  return j.dump();
}

}  // namespace nscatter
