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

#include "nscatter/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nscatter {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("ComplexMatrix: entry count does not match rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw std::invalid_argument("ComplexMatrix: ragged initializer");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& z : out.entries_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("ComplexMatrix: shape mismatch in +");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("ComplexMatrix: shape mismatch in -");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : entries_) z *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("ComplexMatrix: shape mismatch in *");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("StateVector::basis: index out of range");
  std::vector<Complex> amps(dim, 0.0);
  amps[index] = 1.0;
  return StateVector(std::move(amps));
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("StateVector: cannot normalize the zero vector");
  StateVector out = *this;
  for (auto& a : out.amplitudes) a /= n;
  return out;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amplitudes.size());
  std::transform(amplitudes.begin(), amplitudes.end(), p.begin(), [](Complex a) { return std::norm(a); });
  return p;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

StateVector apply(const ComplexMatrix& m, const StateVector& v) {
  if (m.cols() != v.dim()) throw std::invalid_argument("apply: dimension mismatch");
  std::vector<Complex> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v.amplitudes[j];
  return StateVector(std::move(out));
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return s;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

double unitarity_defect(const ComplexMatrix& u) {
  if (!u.is_square()) return INFINITY;
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows()));
}

double operator_norm(const ComplexMatrix& m) {
  const auto eig = eig_hermitian(m.adjoint() * m);
  return std::sqrt(std::max(0.0, eig.values.back()));
}

Complex determinant(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant: matrix not square");
  ComplexMatrix a = m;
  const std::size_t n = a.rows();
  Complex det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == Complex{0.0, 0.0}) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

namespace {

// Applies h <- G^dagger h G and v <- v G, with G the identity except for the
// 2x2 block g acting on indices (p, q).
void rotate(ComplexMatrix& h, ComplexMatrix& v, std::size_t p, std::size_t q, const Complex g[2][2]) {
  const std::size_t n = h.rows();
  for (std::size_t r = 0; r < n; ++r) {
    const Complex hp = h(r, p);
    const Complex hq = h(r, q);
    h(r, p) = g[0][0] * hp + g[1][0] * hq;
    h(r, q) = g[0][1] * hp + g[1][1] * hq;
    const Complex vp = v(r, p);
    const Complex vq = v(r, q);
    v(r, p) = g[0][0] * vp + g[1][0] * vq;
    v(r, q) = g[0][1] * vp + g[1][1] * vq;
  }
  for (std::size_t c = 0; c < n; ++c) {
    const Complex hp = h(p, c);
    const Complex hq = h(q, c);
    h(p, c) = std::conj(g[0][0]) * hp + std::conj(g[1][0]) * hq;
    h(q, c) = std::conj(g[0][1]) * hp + std::conj(g[1][1]) * hq;
  }
}

}  // namespace

HermitianEigen eig_hermitian(const ComplexMatrix& input) {
  if (!input.is_square()) throw std::invalid_argument("eig_hermitian: matrix not square");
  const std::size_t n = input.rows();
  if (n > kMaxEigDimension) {
    std::ostringstream msg;
    msg << "eig_hermitian: dimension " << n << " exceeds supported bound " << kMaxEigDimension;
    throw std::invalid_argument(msg.str());
  }
  const double defect = hermiticity_defect(input);
  if (defect > tol::kHermitian) {
    std::ostringstream msg;
    msg << "eig_hermitian: input not Hermitian (max asymmetry " << defect << ")";
    throw std::invalid_argument(msg.str());
  }

  // Symmetrize so the diagonal is exactly real.
  ComplexMatrix h = input;
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (h(i, j) + std::conj(h(j, i)));
      h(i, j) = avg;
      h(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double off = std::abs(h(p, q));
        if (off == 0.0) continue;
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        if (off <= 1e-18 * (std::abs(app) + std::abs(aqq))) {
          h(p, q) = 0.0;
          h(q, p) = 0.0;
          continue;
        }
        rotated = true;
        // Phase-rotate q so the pivot is real, then a real Jacobi rotation.
        const Complex phase = h(p, q) / off;
        const double theta = (aqq - app) / (2.0 * off);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex eph = std::conj(phase);
        const Complex g[2][2] = {{c, s}, {-s * eph, c * eph}};
        rotate(h, v, p, q, g);
        h(p, q) = 0.0;
        h(q, p) = 0.0;
        h(p, p) = h(p, p).real();
        h(q, q) = h(q, q).real();
      }
    }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return h(a, a).real() < h(b, b).real(); });

  HermitianEigen out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = h(src, src).real();
    double biggest = 0.0;
    for (std::size_t r = 0; r < n; ++r) biggest = std::max(biggest, std::abs(v(r, src)));
    std::size_t lead = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (std::abs(v(r, src)) >= biggest - 1e-12) {
        lead = r;
        break;
      }
    }
    const Complex fix = std::conj(v(lead, src)) / std::abs(v(lead, src));
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, src) * fix;
    out.vectors(lead, k) = std::abs(out.vectors(lead, k));
  }
  return out;
}

ComplexMatrix hermitian_exp(const ComplexMatrix& h, double theta) {
  const auto eig = eig_hermitian(h);
  const std::size_t n = h.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex phase = std::polar(1.0, -theta * eig.values[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.vectors(i, k) * phase;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

namespace pauli {
ComplexMatrix I() { return ComplexMatrix::identity(2); }
ComplexMatrix X() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix Y() { return ComplexMatrix{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}}; }
ComplexMatrix Z() { return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix by_index(int index) {
  switch (index) {
    case 0: return I();
    case 1: return X();
    case 2: return Y();
    case 3: return Z();
    default: throw std::invalid_argument("pauli::by_index: index must be 0..3");
  }
}
}  // namespace pauli

}  // namespace nscatter
