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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nscatter/synthesis.hpp"

namespace nscatter {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kChamberTol = 1e-9;

// Columns: Bell states with phases chosen so that local unitaries map to SO(4).
//   col0 = (|00>+|11>)/sqrt2     XX=+1 YY=-1 ZZ=+1
//   col1 = i(|01>+|10>)/sqrt2    XX=+1 YY=+1 ZZ=-1
//   col2 = (|01>-|10>)/sqrt2     XX=-1 YY=-1 ZZ=-1
//   col3 = i(|00>-|11>)/sqrt2    XX=-1 YY=+1 ZZ=+1
const ComplexMatrix& magic_basis() {
  static const ComplexMatrix b = [] {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex i{0.0, h};
    return ComplexMatrix{{h, 0.0, 0.0, i}, {0.0, i, h, 0.0}, {0.0, i, -h, 0.0}, {h, 0.0, 0.0, -i}};
  }();
  return b;
}

struct LocalFactor {
  ComplexMatrix a, b;
  double phase = 0.0;  // k = exp(i*phase) a (x) b, det a = det b = 1
};

LocalFactor factor_local(const ComplexMatrix& k) {
  std::size_t best = 0;
  for (std::size_t idx = 1; idx < 16; ++idx)
    if (std::abs(k.entries()[idx]) > std::abs(k.entries()[best])) best = idx;
  const std::size_t r = best / 4, c = best % 4;
  const std::size_t i0 = r >> 1, k0 = r & 1, j0 = c >> 1, l0 = c & 1;
  const Complex pivot = k(r, c);

  LocalFactor f{ComplexMatrix(2, 2), ComplexMatrix(2, 2), 0.0};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      f.a(i, j) = k(2 * i + k0, 2 * j + l0);
      f.b(i, j) = k(2 * i0 + i, 2 * j0 + j) / pivot;
    }
  const Complex da = std::sqrt(determinant(f.a));
  const Complex db = std::sqrt(determinant(f.b));
  f.a *= 1.0 / da;
  f.b *= 1.0 / db;
  f.phase = std::arg(da * db);
  return f;
}

// Working state of the canonicalization: every move keeps
// exp(i*phase) (k1a (x) k1b) A(c) (k2a (x) k2b) invariant.
struct KakState {
  KakDecomposition d;

  // c_k -> c_k - sign*pi/2, compensated by P_k (x) P_k on the right.
  void shift(int k, int sign) {
    const ComplexMatrix p = pauli::by_index(k + 1);
    d.coords[k] -= sign * kPi / 2.0;
    d.k2a = p * d.k2a;
    d.k2b = p * d.k2b;
    d.global_phase += sign * kPi / 2.0;
  }

  // Negates the two coordinates other than k by conjugating with P_k (x) I.
  void negate_pair(int k) {
    const ComplexMatrix p = pauli::by_index(k + 1);
    for (int j = 0; j < 3; ++j)
      if (j != k) d.coords[j] = -d.coords[j];
    d.k1a = d.k1a * p;
    d.k2a = p * d.k2a;
  }

  // Swaps coordinates i and j with a quarter turn about the third axis.
  void swap(int i, int j) {
    const int k = 3 - i - j;
    const ComplexMatrix r = hermitian_exp(pauli::by_index(k + 1), kPi / 4.0);
    const ComplexMatrix rd = r.adjoint();
    std::swap(d.coords[i], d.coords[j]);
    d.k1a = d.k1a * rd;
    d.k1b = d.k1b * rd;
    d.k2a = r * d.k2a;
    d.k2b = r * d.k2b;
  }

  void canonicalize() {
    for (int k = 0; k < 3; ++k) {
      while (d.coords[k] > kPi / 4.0 + kChamberTol) shift(k, +1);
      while (d.coords[k] <= -kPi / 4.0 + kChamberTol) shift(k, -1);
    }
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < 2; ++k)
        if (std::abs(d.coords[k]) < std::abs(d.coords[k + 1])) swap(k, k + 1);
    if (d.coords[0] < 0.0) negate_pair(1);
    if (d.coords[1] < 0.0) negate_pair(0);
    if (d.coords[0] > kPi / 4.0 - kChamberTol && d.coords[2] < 0.0) {
      shift(0, +1);
      negate_pair(1);
    }
  }
};

// Real orthogonal R (rows) with R S R^T diagonal for a complex symmetric
// unitary S = A + iB. A and B commute, so a generic real combination of them
// shares their eigenvectors.
ComplexMatrix simultaneous_diagonalizer(const ComplexMatrix& s) {
  ComplexMatrix re(4, 4), im(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex avg = 0.5 * (s(i, j) + s(j, i));
      re(i, j) = avg.real();
      im(i, j) = avg.imag();
    }
  constexpr double kMixes[] = {0.6180339887498949, 1.4142135623730951, -0.3183098861837907, 2.718281828459045,
                               -1.7320508075688772, 0.1234567891011121};
  ComplexMatrix best;
  double best_off = INFINITY;
  for (double x : kMixes) {
    const auto eig = eig_hermitian(re + im * x);
    ComplexMatrix r = eig.vectors.transpose();
    const ComplexMatrix diag = r * s * r.transpose();
    double off = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (i != j) off = std::max(off, std::abs(diag(i, j)));
    if (off < best_off) {
      best_off = off;
      best = r;
    }
    if (off < 1e-13) break;
  }
  return best;
}

}  // namespace

ComplexMatrix canonical_gate(const std::array<double, 3>& coords) {
  const ComplexMatrix gen = kron(pauli::X(), pauli::X()) * coords[0] + kron(pauli::Y(), pauli::Y()) * coords[1] +
                            kron(pauli::Z(), pauli::Z()) * coords[2];
  return hermitian_exp(gen, -1.0);
}

ComplexMatrix KakDecomposition::reconstruct() const {
  return kron(k1a, k1b) * canonical_gate(coords) * kron(k2a, k2b) * std::polar(1.0, global_phase);
}

KakDecomposition kak_decompose(const ComplexMatrix& u) {
  if (u.rows() != 4 || u.cols() != 4) throw std::invalid_argument("kak_decompose: expected a 4x4 matrix");
  const double defect = unitarity_defect(u);
  if (!(defect <= 1e-8)) {
    std::ostringstream msg;
    msg << "kak_decompose: input not unitary (max |U^dagger U - I| = " << defect << ")";
    throw std::invalid_argument(msg.str());
  }

  const double det_phase = std::arg(determinant(u)) / 4.0;
  const ComplexMatrix su = u * std::polar(1.0, -det_phase);
  const ComplexMatrix& mb = magic_basis();
  const ComplexMatrix m = mb.adjoint() * su * mb;
  const ComplexMatrix s = m.transpose() * m;

  ComplexMatrix r = simultaneous_diagonalizer(s);
  if (determinant(r).real() < 0.0)
    for (std::size_t c = 0; c < 4; ++c) r(0, c) = -r(0, c);

  const ComplexMatrix d2 = r * s * r.transpose();
  std::array<Complex, 4> d{};
  for (std::size_t k = 0; k < 4; ++k) d[k] = std::sqrt(d2(k, k) / std::abs(d2(k, k)));

  auto left_from = [&](const std::array<Complex, 4>& diag) {
    ComplexMatrix dinv(4, 4);
    for (std::size_t k = 0; k < 4; ++k) dinv(k, k) = 1.0 / diag[k];
    return m * r.transpose() * dinv;
  };
  ComplexMatrix l = left_from(d);
  if (determinant(l).real() < 0.0) {
    d[0] = -d[0];
    l = left_from(d);
  }

  const LocalFactor left = factor_local(mb * l * mb.adjoint());
  const LocalFactor right = factor_local(mb * r * mb.adjoint());

  std::array<double, 4> th{};
  for (std::size_t k = 0; k < 4; ++k) th[k] = std::arg(d[k]);

  KakState st;
  st.d.k1a = left.a;
  st.d.k1b = left.b;
  st.d.k2a = right.a;
  st.d.k2b = right.b;
  st.d.coords = {(th[0] + th[1] - th[2] - th[3]) / 4.0, (-th[0] + th[1] - th[2] + th[3]) / 4.0,
                 (th[0] - th[1] - th[2] + th[3]) / 4.0};
  st.d.global_phase = det_phase + (th[0] + th[1] + th[2] + th[3]) / 4.0 + left.phase + right.phase;
  st.canonicalize();
  return st.d;
}

int entangling_cost(const std::array<double, 3>& c) {
  auto near = [](double a, double b) { return std::abs(a - b) <= kWeylClassTol; };
  if (near(c[0], 0.0) && near(c[1], 0.0) && near(c[2], 0.0)) return 0;
  if (near(c[0], kPi / 4.0) && near(c[1], 0.0) && near(c[2], 0.0)) return 1;
  if (near(c[2], 0.0)) return 2;
  return 3;
}

}  // namespace nscatter
