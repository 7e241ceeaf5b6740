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

#include "nscatter/tomography.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "nscatter/synthesis.hpp"

namespace nscatter {

namespace {

void check_table(const std::vector<double>& p, std::size_t dim, double tol, const char* what) {
  if (p.size() != dim) throw std::invalid_argument(std::string("tomography record: wrong size for ") + what);
  double s = 0.0;
  for (double x : p) s += x;
  if (std::abs(s - 1.0) > tol) throw std::invalid_argument(std::string("tomography record: ") + what + " does not sum to 1");
}

std::size_t stride_of(int k, int n) { return std::size_t{1} << (n - 1 - k); }

}  // namespace

void TomographyRecord::validate(double tol) const {
  if (num_qubits < 1) throw std::invalid_argument("tomography record: need at least one qubit");
  if (static_cast<int>(px.size()) != num_qubits || static_cast<int>(py.size()) != num_qubits)
    throw std::invalid_argument("tomography record: expected one rotated pair per qubit");
  const std::size_t dim = std::size_t{1} << num_qubits;
  check_table(bare, dim, tol, "bare table");
  for (int k = 0; k < num_qubits; ++k) {
    check_table(px[k], dim, tol, "x table");
    check_table(py[k], dim, tol, "y table");
  }
}

StateVector ReconstructedState::state() const {
  std::vector<Complex> a(dim());
  for (std::size_t i = 0; i < dim(); ++i) a[i] = std::polar(amplitudes[i], phases[i]);
  return StateVector(std::move(a));
}

Gate tomography_rotation_x(int qubit) { return Gate::rx(qubit, -std::numbers::pi / 2.0); }
Gate tomography_rotation_y(int qubit) { return Gate::u3(qubit, -std::numbers::pi / 2.0, 0.0, 0.0); }

std::vector<Circuit> tomography_settings(const Circuit& base, int n) {
  if (n < 1) throw std::invalid_argument("tomography_settings: need at least one qubit");
  if (base.num_qubits != n) throw std::invalid_argument("tomography_settings: circuit register size differs from n");
  std::vector<Circuit> out{base};
  for (int k = 0; k < n; ++k) {
    Circuit y = base;
    y.gates.push_back(tomography_rotation_y(k));
    Circuit x = base;
    x.gates.push_back(tomography_rotation_x(k));
    out.push_back(std::move(y));
    out.push_back(std::move(x));
  }
  return out;
}

TomographyRecord make_record(const std::vector<Distribution>& results, int n) {
  if (static_cast<int>(results.size()) != 2 * n + 1)
    throw std::invalid_argument("make_record: expected 2n+1 distributions");
  TomographyRecord rec;
  rec.num_qubits = n;
  rec.bare = results[0].probs;
  for (int k = 0; k < n; ++k) {
    rec.py.push_back(results[1 + 2 * k].probs);
    rec.px.push_back(results[2 + 2 * k].probs);
  }
  return rec;
}

TomographyRecord exact_record(const StateVector& psi) {
  const std::size_t dim = psi.dim();
  if (dim < 2 || !std::has_single_bit(dim)) throw std::invalid_argument("exact_record: dimension must be 2^n");
  const int n = std::countr_zero(dim);
  Circuit bare;
  bare.num_qubits = n;
  TomographyRecord rec;
  rec.num_qubits = n;
  rec.bare = psi.probabilities();
  for (int k = 0; k < n; ++k) {
    rec.py.push_back(apply(embed(tomography_rotation_y(k), n), psi).probabilities());
    rec.px.push_back(apply(embed(tomography_rotation_x(k), n), psi).probabilities());
  }
  return rec;
}

double pair_phase(const TomographyRecord& rec, int k, std::size_t i) {
  const std::size_t j = i + stride_of(k, rec.num_qubits);
  const double mean = 0.5 * (rec.bare[i] + rec.bare[j]);
  return std::atan2(-rec.px[k][i] + mean, rec.py[k][i] - mean);
}

ReconstructedState reconstruct(const TomographyRecord& rec) {
  const int n = rec.num_qubits;
  const std::size_t dim = std::size_t{1} << n;
  if (rec.bare.size() != dim) throw std::invalid_argument("reconstruct: bare table has the wrong size");

  ReconstructedState out;
  out.amplitudes.resize(dim);
  out.phases.assign(dim, 0.0);
  double total = 0.0;
  for (double p : rec.bare) total += std::max(0.0, p);
  std::vector<bool> populated(dim), resolved(dim, false);
  for (std::size_t i = 0; i < dim; ++i) {
    out.amplitudes[i] = std::sqrt(std::max(0.0, rec.bare[i]) / total);
    populated[i] = rec.bare[i] > kZeroAmplitudeProbability;
    if (!populated[i]) resolved[i] = true;
  }

  std::size_t anchor = 0;
  while (anchor < dim && !populated[anchor]) ++anchor;
  if (anchor == dim) throw std::invalid_argument("reconstruct: bare table carries no probability");
  resolved[anchor] = true;

  // Strides descend from 2^(n-1); i ascends within a stride. With every
  // branch populated a single pass visits the tree edges parent-first. Empty
  // branches leave gaps that later passes bridge through other populated pairs.
  bool progress = true;
  while (progress) {
    progress = false;
    for (int k = 0; k < n; ++k) {
      const std::size_t s = stride_of(k, n);
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & s) continue;
        const std::size_t j = i + s;
        if (!populated[i] || !populated[j] || resolved[i] == resolved[j]) continue;
        const double delta = pair_phase(rec, k, i);
        if (resolved[i]) out.phases[j] = std::remainder(out.phases[i] + delta, 2.0 * std::numbers::pi);
        else out.phases[i] = std::remainder(out.phases[j] - delta, 2.0 * std::numbers::pi);
        resolved[i] = resolved[j] = true;
        progress = true;
      }
    }
  }
  return out;
}

std::vector<double> givens_angles(const std::vector<double>& probabilities) {
  std::vector<double> theta(probabilities.size(), 0.0);
  double cascade = 1.0;  // prod_{i<k} cos(theta_i/2)
  for (std::size_t k = 1; k < probabilities.size(); ++k) {
    if (cascade < kZeroAmplitudeProbability) break;
    const double arg = std::clamp(std::sqrt(std::max(0.0, probabilities[k])) / cascade, 0.0, 1.0);
    theta[k] = 2.0 * std::asin(arg);
    cascade *= std::cos(theta[k] / 2.0);
  }
  return theta;
}

ComplexMatrix reinit_operator(const ReconstructedState& state) {
  const std::size_t dim = state.dim();
  std::vector<double> p(dim);
  for (std::size_t i = 0; i < dim; ++i) p[i] = state.amplitudes[i] * state.amplitudes[i];
  const std::vector<double> theta = givens_angles(p);

  ComplexMatrix r_tot = ComplexMatrix::identity(dim);
  for (std::size_t k = 1; k < dim; ++k) {
    if (theta[k] == 0.0) continue;
    ComplexMatrix r = ComplexMatrix::identity(dim);
    const double c = std::cos(theta[k] / 2.0), s = std::sin(theta[k] / 2.0);
    r(0, 0) = c;
    r(0, k) = -s;
    r(k, 0) = s;
    r(k, k) = c;
    r_tot = r * r_tot;
  }
  std::vector<Complex> ph(dim);
  for (std::size_t i = 0; i < dim; ++i) ph[i] = std::polar(1.0, state.phases[i]);
  return ComplexMatrix::diagonal(ph) * r_tot;
}

Circuit reinit_circuit(const ReconstructedState& state) {
  if (state.dim() != 4) throw std::invalid_argument("reinit_circuit: only two-qubit states can be synthesized");
  return synthesize(reinit_operator(state));
}

std::string reconstructed_json(const ReconstructedState& state) {
  return nlohmann::json{{"amplitudes", state.amplitudes}, {"phases", state.phases}}.dump();
}

}  // namespace nscatter
