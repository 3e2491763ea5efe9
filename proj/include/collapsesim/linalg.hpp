// Copyright 2026 The collapsesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Fixed-dimension complex linear algebra for one and two polarization qubits.

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>

namespace collapsesim {

using Complex = std::complex<double>;

inline constexpr double kIdentityTol = 1e-12;  // algebraic identities
inline constexpr double kContractTol = 1e-9;   // precondition checks

template <std::size_t N>
class Ket {
  static_assert(N == 2 || N == 4, "only one- and two-qubit spaces are modeled");

 public:
  using Amplitudes = std::array<Complex, N>;

  /// Stores the amplitudes as given; throws std::invalid_argument on NaN/Inf.
  explicit Ket(const Amplitudes& amplitudes);

  /// Rescales to unit norm; throws std::invalid_argument for a zero vector.
  static Ket normalized(const Amplitudes& amplitudes);

  static constexpr std::size_t dim() { return N; }
  const Complex& operator[](std::size_t i) const { return amp_[i]; }
  const Amplitudes& amplitudes() const { return amp_; }

  double norm_squared() const;
  bool is_normalized(double tol = kContractTol) const;

 private:
  Amplitudes amp_;
};

using Qubit = Ket<2>;
using TwoQubit = Ket<4>;

template <std::size_t N>
Complex inner(const Ket<N>& bra, const Ket<N>& ket);

/// True when a = e^{i phi} b for some phase, within tol on |<a|b>|.
template <std::size_t N>
bool equal_up_to_phase(const Ket<N>& a, const Ket<N>& b, double tol = kIdentityTol);

/// Row-major N x N complex matrix.
template <std::size_t N>
struct Matrix {
  std::array<Complex, N * N> m{};

  Complex& operator()(std::size_t r, std::size_t c) { return m[r * N + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m[r * N + c]; }

  static Matrix identity();
  Complex trace() const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator*(double s) const;
};

template <std::size_t N>
Matrix<N> outer(const Ket<N>& a, const Ket<N>& b);

template <std::size_t N>
Ket<N> apply(const Matrix<N>& op, const Ket<N>& ket);

template <std::size_t N>
Matrix<N> multiply(const Matrix<N>& a, const Matrix<N>& b);

template <std::size_t N>
Matrix<N> adjoint(const Matrix<N>& a);

/// Largest entrywise |a - b|.
template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b);

/// Eigenvalues (ascending) of a Hermitian matrix. N = 2 uses the closed form,
/// N = 4 the cyclic Jacobi iteration below.
template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const Matrix<N>& h);

/// Cyclic Jacobi on the real symmetric 2N x 2N embedding [[Re, -Im], [Im, Re]];
/// each eigenvalue of h appears twice there. Sweeps until the off-diagonal
/// Frobenius norm drops below 1e-13.
template <std::size_t N>
std::array<double, N> jacobi_eigenvalues(const Matrix<N>& h);

/// Density operator. Construction only checks finiteness; validate() reports
/// the first broken invariant (Hermitian, unit trace, PSD) so each operation
/// can raise the error kind it documents.
template <std::size_t N>
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix<N>& matrix);

  static DensityMatrix pure(const Ket<N>& ket);
  static DensityMatrix maximally_mixed();

  const Matrix<N>& matrix() const { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  std::optional<std::string> validate(double tol = kContractTol) const;
  bool is_valid(double tol = kContractTol) const { return !validate(tol).has_value(); }

  /// <v|rho|v>
  double expectation(const Ket<N>& v) const;

 private:
  Matrix<N> m_;
};

using Density2 = DensityMatrix<2>;
using Density4 = DensityMatrix<4>;

enum class Subsystem { kA, kB };

TwoQubit tensor_product(const Qubit& a, const Qubit& b);
Density4 tensor_product(const Density2& a, const Density2& b);

/// Reduced state of the kept photon. Throws ContractViolation if rho is not a
/// valid density operator.
Density2 partial_trace(const Density4& rho, Subsystem keep);

/// 1/2 * sum |eig(r1 - r2)|. Both operands share N, so dimension mismatch is
/// rejected at compile time.
template <std::size_t N>
double trace_distance(const DensityMatrix<N>& r1, const DensityMatrix<N>& r2);

}  // namespace collapsesim
