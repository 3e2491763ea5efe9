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

#include "collapsesim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "collapsesim/errors.hpp"

namespace collapsesim {

template <std::size_t N>
Ket<N>::Ket(const Amplitudes& amplitudes) : amp_(amplitudes) {
  for (const Complex& a : amp_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("Ket: non-finite amplitude");
    }
  }
}

template <std::size_t N>
Ket<N> Ket<N>::normalized(const Amplitudes& amplitudes) {
  Ket raw(amplitudes);
  const double n2 = raw.norm_squared();
  if (!(n2 > 0.0)) throw std::invalid_argument("Ket: cannot normalize the zero vector");
  if (n2 == 1.0) return raw;
  const double scale = 1.0 / std::sqrt(n2);
  Amplitudes out = amplitudes;
  for (Complex& a : out) a *= scale;
  return Ket(out);
}

template <std::size_t N>
double Ket<N>::norm_squared() const {
  double s = 0.0;
  for (const Complex& a : amp_) s += std::norm(a);
  return s;
}

template <std::size_t N>
bool Ket<N>::is_normalized(double tol) const {
  return std::abs(norm_squared() - 1.0) <= tol;
}

template <std::size_t N>
Complex inner(const Ket<N>& bra, const Ket<N>& ket) {
  Complex s{};
  for (std::size_t i = 0; i < N; ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

template <std::size_t N>
bool equal_up_to_phase(const Ket<N>& a, const Ket<N>& b, double tol) {
  const double na = std::sqrt(a.norm_squared());
  const double nb = std::sqrt(b.norm_squared());
  if (std::abs(na - nb) > tol) return false;
  return std::abs(std::abs(inner(a, b)) - na * nb) <= tol;
}

template <std::size_t N>
Matrix<N> Matrix<N>::identity() {
  Matrix out;
  for (std::size_t i = 0; i < N; ++i) out(i, i) = 1.0;
  return out;
}

template <std::size_t N>
Complex Matrix<N>::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
  return t;
}

template <std::size_t N>
Matrix<N> Matrix<N>::operator-(const Matrix& o) const {
  Matrix out;
  for (std::size_t i = 0; i < N * N; ++i) out.m[i] = m[i] - o.m[i];
  return out;
}

template <std::size_t N>
Matrix<N> Matrix<N>::operator+(const Matrix& o) const {
  Matrix out;
  for (std::size_t i = 0; i < N * N; ++i) out.m[i] = m[i] + o.m[i];
  return out;
}

template <std::size_t N>
Matrix<N> Matrix<N>::operator*(double s) const {
  Matrix out;
  for (std::size_t i = 0; i < N * N; ++i) out.m[i] = m[i] * s;
  return out;
}

template <std::size_t N>
Matrix<N> outer(const Ket<N>& a, const Ket<N>& b) {
  Matrix<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out(r, c) = a[r] * std::conj(b[c]);
  return out;
}

template <std::size_t N>
Ket<N> apply(const Matrix<N>& op, const Ket<N>& ket) {
  typename Ket<N>::Amplitudes out{};
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out[r] += op(r, c) * ket[c];
  return Ket<N>(out);
}

template <std::size_t N>
Matrix<N> multiply(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t c = 0; c < N; ++c) out(r, c) += a(r, k) * b(k, c);
  return out;
}

template <std::size_t N>
Matrix<N> adjoint(const Matrix<N>& a) {
  Matrix<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out(r, c) = std::conj(a(c, r));
  return out;
}

template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
  return d;
}

namespace {

std::array<double, 2> closed_form_eigenvalues(const Matrix<2>& h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const double mean = 0.5 * (a + d);
  const double half_gap = std::hypot(0.5 * (a - d), std::abs(h(0, 1)));
  return {mean - half_gap, mean + half_gap};
}

}  // namespace

template <std::size_t N>
std::array<double, N> jacobi_eigenvalues(const Matrix<N>& h) {
  constexpr std::size_t M = 2 * N;
  std::array<std::array<double, M>, M> a{};
  for (std::size_t r = 0; r < N; ++r) {
    for (std::size_t c = 0; c < N; ++c) {
      const double re = 0.5 * (h(r, c).real() + h(c, r).real());
      const double im = 0.5 * (h(r, c).imag() - h(c, r).imag());
      a[r][c] = re;
      a[r + N][c + N] = re;
      a[r + N][c] = im;
      a[r][c + N] = -im;
    }
  }

  constexpr double kThreshold = 1e-13;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < M; ++p)
      for (std::size_t q = p + 1; q < M; ++q) off += 2.0 * a[p][q] * a[p][q];
    if (std::sqrt(off) < kThreshold) break;

    for (std::size_t p = 0; p < M; ++p) {
      for (std::size_t q = p + 1; q < M; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < M; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < M; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }

  std::array<double, M> diag{};
  for (std::size_t i = 0; i < M; ++i) diag[i] = a[i][i];
  std::sort(diag.begin(), diag.end());
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = 0.5 * (diag[2 * i] + diag[2 * i + 1]);
  return out;
}

template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const Matrix<N>& h) {
  if constexpr (N == 2) {
    return closed_form_eigenvalues(h);
  } else {
    return jacobi_eigenvalues(h);
  }
}

template <std::size_t N>
DensityMatrix<N>::DensityMatrix(const Matrix<N>& matrix) : m_(matrix) {
  for (const Complex& z : m_.m) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("DensityMatrix: non-finite entry");
    }
  }
}

template <std::size_t N>
DensityMatrix<N> DensityMatrix<N>::pure(const Ket<N>& ket) {
  return DensityMatrix(outer(ket, ket));
}

template <std::size_t N>
DensityMatrix<N> DensityMatrix<N>::maximally_mixed() {
  return DensityMatrix(Matrix<N>::identity() * (1.0 / static_cast<double>(N)));
}

template <std::size_t N>
std::optional<std::string> DensityMatrix<N>::validate(double tol) const {
  if (max_abs_diff(m_, adjoint(m_)) > tol) return "not Hermitian";
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol) return "trace is not 1";
  const auto eig = hermitian_eigenvalues(m_);
  if (eig.front() < -tol) return "not positive semidefinite";
  return std::nullopt;
}

template <std::size_t N>
double DensityMatrix<N>::expectation(const Ket<N>& v) const {
  return inner(v, apply(m_, v)).real();
}

TwoQubit tensor_product(const Qubit& a, const Qubit& b) {
  return TwoQubit({a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]});
}

Density4 tensor_product(const Density2& a, const Density2& b) {
  Matrix<4> out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return Density4(out);
}

Density2 partial_trace(const Density4& rho, Subsystem keep) {
  if (auto problem = rho.validate()) {
    throw ContractViolation("partial_trace: malformed density operator (" + *problem + ")");
  }
  // Basis index of |a b> is 2a + b.
  Matrix<2> out;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      Complex s{};
      for (std::size_t t = 0; t < 2; ++t) {
        s += keep == Subsystem::kA ? rho(2 * r + t, 2 * c + t) : rho(2 * t + r, 2 * t + c);
      }
      out(r, c) = s;
    }
  }
  return Density2(out);
}

template <std::size_t N>
double trace_distance(const DensityMatrix<N>& r1, const DensityMatrix<N>& r2) {
  const auto eig = hermitian_eigenvalues(r1.matrix() - r2.matrix());
  double s = 0.0;
  for (double e : eig) s += std::abs(e);
  return 0.5 * s;
}

template class Ket<2>;
template class Ket<4>;
template struct Matrix<2>;
template struct Matrix<4>;
template class DensityMatrix<2>;
template class DensityMatrix<4>;
template Complex inner(const Ket<2>&, const Ket<2>&);
template Complex inner(const Ket<4>&, const Ket<4>&);
template bool equal_up_to_phase(const Ket<2>&, const Ket<2>&, double);
template bool equal_up_to_phase(const Ket<4>&, const Ket<4>&, double);
template Matrix<2> outer(const Ket<2>&, const Ket<2>&);
template Matrix<4> outer(const Ket<4>&, const Ket<4>&);
template Ket<2> apply(const Matrix<2>&, const Ket<2>&);
template Ket<4> apply(const Matrix<4>&, const Ket<4>&);
template Matrix<2> multiply(const Matrix<2>&, const Matrix<2>&);
template Matrix<4> multiply(const Matrix<4>&, const Matrix<4>&);
template Matrix<2> adjoint(const Matrix<2>&);
template Matrix<4> adjoint(const Matrix<4>&);
template double max_abs_diff(const Matrix<2>&, const Matrix<2>&);
template double max_abs_diff(const Matrix<4>&, const Matrix<4>&);
template std::array<double, 2> hermitian_eigenvalues(const Matrix<2>&);
template std::array<double, 4> hermitian_eigenvalues(const Matrix<4>&);
template std::array<double, 2> jacobi_eigenvalues(const Matrix<2>&);
template std::array<double, 4> jacobi_eigenvalues(const Matrix<4>&);
template double trace_distance(const DensityMatrix<2>&, const DensityMatrix<2>&);
template double trace_distance(const DensityMatrix<4>&, const DensityMatrix<4>&);

}  // namespace collapsesim
