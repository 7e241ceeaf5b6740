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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nscatter {

using Complex = std::complex<double>;

/// Numerical tolerances shared by every module.
namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kUnitary = 1e-12;
inline constexpr double kNormalized = 1e-10;
}  // namespace tol

/// Largest matrix dimension accepted by the Jacobi eigensolver.
inline constexpr std::size_t kMaxEigDimension = 16;

/// Small dense complex matrix stored row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// Pure state amplitudes.
struct StateVector {
  std::vector<Complex> amplitudes;

  StateVector() = default;
  explicit StateVector(std::vector<Complex> amps) : amplitudes(std::move(amps)) {}

  /// Computational basis state |index> in a space of dimension dim.
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amplitudes.size(); }
  double norm() const;
  StateVector normalized() const;
  std::vector<double> probabilities() const;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
StateVector apply(const ComplexMatrix& m, const StateVector& v);
Complex inner(const StateVector& a, const StateVector& b);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// max |M - M^dagger|
double hermiticity_defect(const ComplexMatrix& m);
/// max |U^dagger U - I|
double unitarity_defect(const ComplexMatrix& u);
/// Largest singular value.
double operator_norm(const ComplexMatrix& m);
Complex determinant(const ComplexMatrix& m);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors
};

/// Cyclic Jacobi diagonalization. Eigenvalues come back ascending; each
/// eigenvector has its largest-magnitude component made real and positive.
/// Throws std::invalid_argument on non-Hermitian or oversized input.
HermitianEigen eig_hermitian(const ComplexMatrix& h);

/// exp(-i * theta * h) for Hermitian h.
ComplexMatrix hermitian_exp(const ComplexMatrix& h, double theta);

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
/// Index 0..3 maps to I, X, Y, Z.
ComplexMatrix by_index(int index);
}  // namespace pauli

}  // namespace nscatter
