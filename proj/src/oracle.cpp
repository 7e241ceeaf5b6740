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

#include "nscatter/oracle.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <numbers>

#include "nscatter/spin.hpp"
#include "nscatter/synthesis.hpp"

namespace nscatter::oracle {

ComplexMatrix taylor_exp(const ComplexMatrix& h, double theta, int terms) {
  const std::size_t d = h.rows();
  const ComplexMatrix step = h * Complex{0.0, -theta};
  ComplexMatrix term = ComplexMatrix::identity(d);
  ComplexMatrix sum = term;
  for (int k = 1; k < terms; ++k) {
    term = term * step * Complex{1.0 / k, 0.0};
    sum += term;
  }
  return sum;
}

ComplexMatrix kron_by_index(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

ComplexMatrix ordered_product(const std::vector<ComplexMatrix>& factors) {
  ComplexMatrix acc = ComplexMatrix::identity(factors.empty() ? 1 : factors.front().rows());
  for (const auto& f : factors) {
    ComplexMatrix next(acc.rows(), acc.cols());
    for (std::size_t i = 0; i < acc.rows(); ++i)
      for (std::size_t j = 0; j < acc.cols(); ++j)
        for (std::size_t k = 0; k < acc.rows(); ++k) next(i, j) += f(i, k) * acc(k, j);
    acc = next;
  }
  return acc;
}

Vec3 finite_difference_force(const PotentialModel& model, const Vec3& r, double h) {
  auto v = [&](const Vec3& p) { return model.spin_independent.value(norm(p)); };
  Vec3 f{};
  for (int a = 0; a < 3; ++a) {
    Vec3 up = r, dn = r;
    up[a] += h;
    dn[a] -= h;
    f[a] = -(v(up) - v(dn)) / (2.0 * h);
  }
  return f;
}

ComplexMatrix vsd_by_elements(const PotentialModel& model, const Vec3& r) {
  const double d = norm(r);
  const double n[3] = {r[0] / d, r[1] / d, r[2] / d};
  const Complex i{0.0, 1.0};
  // Spin-1/2 matrices indexed [axis][row][col] with row 0 = up.
  const Complex s[3][2][2] = {{{0.0, 1.0}, {1.0, 0.0}}, {{0.0, -i}, {i, 0.0}}, {{1.0, 0.0}, {0.0, -1.0}}};
  Complex sn[2][2] = {};
  for (int a = 0; a < 3; ++a)
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) sn[x][y] += n[a] * s[a][x][y];

  const double vs = model.spin_scalar.value(d), vt = model.spin_tensor.value(d);
  ComplexMatrix prod(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e) {
          Complex dot = 0.0;
          for (int ax = 0; ax < 3; ++ax) dot += s[ax][a][c] * s[ax][b][e];
          const Complex tensor = sn[a][c] * sn[b][e] - dot / 3.0;
          prod(2 * a + b, 2 * c + e) = vs * dot + vt * tensor;
        }

  // Coupled states in the product basis (uu, ud, du, dd).
  const double h = 1.0 / std::sqrt(2.0);
  const double cg[4][4] = {{0, 0, 0, 1}, {0, h, h, 0}, {1, 0, 0, 0}, {0, h, -h, 0}};
  ComplexMatrix out(4, 4);
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) {
      Complex acc = 0.0;
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) acc += cg[p][x] * prod(x, y) * cg[q][y];
      out(p, q) = acc;
    }
  return out;
}

namespace {

int bit(std::size_t idx, int q, int n) { return static_cast<int>((idx >> (n - 1 - q)) & 1U); }
std::size_t set_bit(std::size_t idx, int q, int n, int v) {
  const std::size_t m = std::size_t{1} << (n - 1 - q);
  return v ? (idx | m) : (idx & ~m);
}

std::vector<Complex> apply_gate(const Gate& g, const std::vector<Complex>& psi, int n) {
  std::vector<Complex> out(psi.size(), 0.0);
  if (g.kind == GateKind::CNOT) {
    for (std::size_t b = 0; b < psi.size(); ++b) {
      const std::size_t t = bit(b, g.qubits[0], n) ? (b ^ (std::size_t{1} << (n - 1 - g.qubits[1]))) : b;
      out[t] += psi[b];
    }
    return out;
  }
  if (g.kind == GateKind::CZ) {
    for (std::size_t b = 0; b < psi.size(); ++b)
      out[b] = (bit(b, g.qubits[0], n) && bit(b, g.qubits[1], n)) ? -psi[b] : psi[b];
    return out;
  }
  // Single-qubit gates from their textbook definitions.
  const double t = g.angles[0];
  const Complex i{0.0, 1.0};
  Complex m[2][2];
  if (g.kind == GateKind::RX) {
    m[0][0] = std::cos(t / 2);
    m[0][1] = -i * std::sin(t / 2);
    m[1][0] = -i * std::sin(t / 2);
    m[1][1] = std::cos(t / 2);
  } else if (g.kind == GateKind::RZ) {
    m[0][0] = std::exp(-i * t / 2.0);
    m[0][1] = 0.0;
    m[1][0] = 0.0;
    m[1][1] = std::exp(i * t / 2.0);
  } else {
    const double phi = g.angles[1], lam = g.angles[2];
    m[0][0] = std::cos(t / 2);
    m[0][1] = -std::exp(i * lam) * std::sin(t / 2);
    m[1][0] = std::exp(i * phi) * std::sin(t / 2);
    m[1][1] = std::exp(i * (phi + lam)) * std::cos(t / 2);
  }
  const int q = g.qubits[0];
  for (std::size_t b = 0; b < psi.size(); ++b) {
    const int v = bit(b, q, n);
    for (int w = 0; w < 2; ++w) out[set_bit(b, q, n, w)] += m[w][v] * psi[b];
  }
  return out;
}

}  // namespace

StateVector run_statevector(const Circuit& circuit, const StateVector& initial) {
  std::vector<Complex> psi = initial.amplitudes;
  for (const auto& g : circuit.gates) psi = apply_gate(g, psi, circuit.num_qubits);
  const Complex ph = std::polar(1.0, circuit.global_phase);
  for (auto& a : psi) a *= ph;
  return StateVector(std::move(psi));
}

ComplexMatrix statevector_unitary(const Circuit& circuit) {
  const std::size_t d = std::size_t{1} << circuit.num_qubits;
  ComplexMatrix u(d, d);
  for (std::size_t c = 0; c < d; ++c) {
    const StateVector col = run_statevector(circuit, StateVector::basis(d, c));
    for (std::size_t r = 0; r < d; ++r) u(r, c) = col.amplitudes[r];
  }
  return u;
}

ComplexMatrix superoperator_evolve(const Circuit& circuit, const NoiseModel& noise, const ComplexMatrix& rho) {
  const std::size_t d = rho.rows();
  const std::size_t d2 = d * d;
  // Row-major vec: vec(A rho B)[i*d+j] = sum A_ik rho_kl B_lj, i.e. (A (x) B^T) vec(rho).
  std::vector<Complex> v(d2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) v[i * d + j] = rho(i, j);

  auto depolarizer = [&](double lambda) {
    ComplexMatrix s = ComplexMatrix::identity(d2) * lambda;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) s(i * d + i, k * d + k) += (1.0 - lambda) / static_cast<double>(d);
    return s;
  };
  const int n = circuit.num_qubits;
  for (const auto& g : circuit.gates) {
    Circuit one;
    one.num_qubits = n;
    one.gates = {g};
    ComplexMatrix u = statevector_unitary(one);
    if (g.is_entangling() && noise.over_rotation != 0.0) {
      const ComplexMatrix p = g.kind == GateKind::CNOT ? pauli::X() : pauli::Z();
      ComplexMatrix gen = ComplexMatrix::identity(1);
      for (int q = 0; q < n; ++q) gen = kron_by_index(gen, q == g.qubits[0] ? pauli::Z() : q == g.qubits[1] ? p : pauli::I());
      u = taylor_exp(gen, noise.over_rotation / 2.0, 40) * u;
    }
    const ComplexMatrix sup = depolarizer(g.is_entangling() ? noise.lambda2q : noise.lambda1q) *
                              kron_by_index(u, u.adjoint().transpose());
    std::vector<Complex> next(d2, 0.0);
    for (std::size_t r = 0; r < d2; ++r)
      for (std::size_t c = 0; c < d2; ++c) next[r] += sup(r, c) * v[c];
    v = next;
  }
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = v[i * d + j];
  return out;
}

TomographyRecord statevector_record(const StateVector& psi) {
  const std::size_t d = psi.dim();
  const int n = std::countr_zero(d);
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  TomographyRecord rec;
  rec.num_qubits = n;
  rec.bare = psi.probabilities();
  for (int k = 0; k < n; ++k) {
    const std::size_t s = std::size_t{1} << (n - 1 - k);
    std::vector<double> py(d), px(d);
    for (std::size_t b = 0; b < d; ++b) {
      if (b & s) continue;
      const Complex a0 = psi.amplitudes[b], a1 = psi.amplitudes[b | s];
      // R_y(-pi/2) = h [[1, 1], [-1, 1]], R_x(-pi/2) = h [[1, i], [i, 1]]
      py[b] = std::norm(h * (a0 + a1));
      py[b | s] = std::norm(h * (-a0 + a1));
      px[b] = std::norm(h * (a0 + i * a1));
      px[b | s] = std::norm(h * (i * a0 + a1));
    }
    rec.py.push_back(py);
    rec.px.push_back(px);
  }
  return rec;
}

ComplexMatrix haar_unitary(std::size_t dim, CounterRng& rng) {
  ComplexMatrix z(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) z(r, c) = Complex{rng.normal(), rng.normal()} / std::sqrt(2.0);
  // Modified Gram-Schmidt on columns; the R diagonal is real positive, which
  // makes the Q factor Haar distributed.
  ComplexMatrix q(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    std::vector<Complex> v(dim);
    for (std::size_t r = 0; r < dim; ++r) v[r] = z(r, c);
    for (std::size_t p = 0; p < c; ++p) {
      Complex dot = 0.0;
      for (std::size_t r = 0; r < dim; ++r) dot += std::conj(q(r, p)) * v[r];
      for (std::size_t r = 0; r < dim; ++r) v[r] -= dot * q(r, p);
    }
    double nrm = 0.0;
    for (const auto& x : v) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    for (std::size_t r = 0; r < dim; ++r) q(r, c) = v[r] / nrm;
  }
  return q;
}

ComplexMatrix random_hermitian(std::size_t dim, CounterRng& rng) {
  ComplexMatrix a(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) a(r, c) = Complex{rng.normal(), rng.normal()};
  return (a + a.adjoint()) * 0.5;
}

StateVector random_state(std::size_t dim, CounterRng& rng) {
  std::vector<Complex> v(dim);
  for (auto& x : v) x = Complex{rng.normal(), rng.normal()};
  return StateVector(std::move(v)).normalized();
}

ComplexMatrix random_su2(CounterRng& rng) {
  const ComplexMatrix u = haar_unitary(2, rng);
  return u * (1.0 / std::sqrt(determinant(u)));
}

Circuit random_circuit(std::size_t length, CounterRng& rng, int num_qubits) {
  Circuit c;
  c.num_qubits = num_qubits;
  const double tau = 2.0 * std::numbers::pi;
  for (std::size_t g = 0; g < length; ++g) {
    const int q = static_cast<int>(rng.below(num_qubits));
    int other = static_cast<int>(rng.below(num_qubits - 1));
    if (other >= q) ++other;
    switch (rng.below(5)) {
      case 0: c.gates.push_back(Gate::rx(q, tau * rng.uniform())); break;
      case 1: c.gates.push_back(Gate::rz(q, tau * rng.uniform())); break;
      case 2: c.gates.push_back(Gate::u3(q, tau * rng.uniform(), tau * rng.uniform(), tau * rng.uniform())); break;
      case 3: c.gates.push_back(Gate::cnot(q, other)); break;
      default: c.gates.push_back(Gate::cz(q, other)); break;
    }
  }
  c.global_phase = tau * rng.uniform();
  return c;
}

namespace {

struct Reporter {
  std::ostream& out;
  bool all = true;
  void check(const char* name, double value, double limit) {
    const bool ok = value <= limit;
    all = all && ok;
    out << (ok ? "PASS " : "FAIL ") << std::left << std::setw(44) << name << " max error " << std::scientific
        << std::setprecision(3) << value << " (limit " << limit << ")\n";
  }
};

}  // namespace

bool run_suite(std::ostream& out, std::uint64_t seed) {
  CounterRng rng(CounterRng::derive(seed, CounterRng::Domain::Test, {0}));
  Reporter rep{out};
  double err = 0.0;

  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix h = random_hermitian(4, rng);
    err = std::max(err, max_abs_diff(hermitian_exp(h, 0.25), taylor_exp(h, 0.25)));
  }
  rep.check("hermitian_exp vs Taylor series", err, 1e-10);

  err = 0.0;
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix a = haar_unitary(2, rng), b = random_hermitian(2, rng);
    err = std::max(err, max_abs_diff(kron(a, b), kron_by_index(a, b)));
  }
  rep.check("kron vs index formula", err, 1e-15);

  err = 0.0;
  const PotentialModel model = default_potential();
  for (int t = 0; t < 200; ++t) {
    const Vec3 r{0.5 * rng.normal(), 0.5 * rng.normal(), 0.5 * rng.normal()};
    if (norm(r) < 1e-2) continue;
    err = std::max(err, max_abs_diff(build_vsd(model, r), vsd_by_elements(model, r)));
  }
  rep.check("V_SD vs element-wise construction", err, 1e-12);

  err = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Circuit c = random_circuit(12, rng);
    err = std::max(err, max_abs_diff(unitary_of(c), statevector_unitary(c)));
  }
  rep.check("unitary_of vs state-vector columns", err, 1e-12);

  err = 0.0;
  NoiseModel noise = NoiseModel::ideal();
  noise.lambda2q = 0.9;
  noise.lambda1q = 0.995;
  noise.over_rotation = 0.07;
  for (int t = 0; t < 20; ++t) {
    const Circuit c = random_circuit(10, rng);
    const DensityMatrix rho0 = DensityMatrix::pure(random_state(4, rng));
    err = std::max(err, max_abs_diff(evolve(c, noise, rho0).rho, superoperator_evolve(c, noise, rho0.rho)));
  }
  rep.check("evolve vs superoperator composition", err, 1e-10);

  double infid = 0.0;
  for (int t = 0; t < 200; ++t) {
    const ComplexMatrix u = haar_unitary(4, rng);
    infid = std::max(infid, 1.0 - trace_fidelity(u, unitary_of(synthesize(u))));
  }
  rep.check("synthesize vs Haar targets (1 - F)", infid, 1e-9);

  infid = 0.0;
  for (int t = 0; t < 100; ++t) {
    const StateVector psi = random_state(4, rng);
    const ReconstructedState rec = reconstruct(statevector_record(psi));
    infid = std::max(infid, 1.0 - std::norm(inner(psi, rec.state())));
  }
  rep.check("tomography round trip (1 - F)", infid, 1e-10);

  out << (rep.all ? "oracle suite: all checks passed\n" : "oracle suite: FAILURES\n");
  return rep.all;
}

}  // namespace nscatter::oracle
