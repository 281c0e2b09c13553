#pragma once

// Fixed-size dense matrices for qubit and two-qubit operators, plus a cyclic
// Jacobi eigensolver for the real symmetric case.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace relchan {

using Complex = std::complex<double>;

/// Row-major N×N matrix with value semantics.
template <typename T, std::size_t N>
struct Matrix {
  static constexpr std::size_t dim = N;
  std::array<T, N * N> data{};

  constexpr T& operator()(std::size_t i, std::size_t j) { return data[i * N + j]; }
  constexpr const T& operator()(std::size_t i, std::size_t j) const { return data[i * N + j]; }

  static constexpr Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = T{1};
    return m;
  }

  constexpr Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data[k] += o.data[k];
    return *this;
  }
  constexpr Matrix& operator-=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data[k] -= o.data[k];
    return *this;
  }
  constexpr Matrix& operator*=(T s) {
    for (auto& x : data) x *= s;
    return *this;
  }

  friend constexpr Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend constexpr Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend constexpr Matrix operator*(Matrix a, T s) { return a *= s; }
  friend constexpr Matrix operator*(T s, Matrix a) { return a *= s; }

  friend constexpr Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t j = 0; j < N; ++j) r(i, j) += a(i, k) * b(k, j);
    return r;
  }

  constexpr T trace() const {
    T t{};
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }
};

using RealMatrix2 = Matrix<double, 2>;
using RealMatrix4 = Matrix<double, 4>;
using ComplexMatrix2 = Matrix<Complex, 2>;
using ComplexMatrix4 = Matrix<Complex, 4>;

template <std::size_t N>
Matrix<Complex, N> adjoint(const Matrix<Complex, N>& m) {
  Matrix<Complex, N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(m(j, i));
  return r;
}

template <std::size_t N>
Matrix<Complex, N> to_complex(const Matrix<double, N>& m) {
  Matrix<Complex, N> r;
  for (std::size_t k = 0; k < N * N; ++k) r.data[k] = m.data[k];
  return r;
}

/// Kronecker product of two 2×2 matrices (first factor is the high index).
template <typename T>
Matrix<T, 4> kron(const Matrix<T, 2>& a, const Matrix<T, 2>& b) {
  Matrix<T, 4> r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return r;
}

/// Largest absolute entry difference.
template <typename T, std::size_t N>
double max_abs_diff(const Matrix<T, N>& a, const Matrix<T, N>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < N * N; ++k) d = std::max(d, std::abs(a.data[k] - b.data[k]));
  return d;
}

template <typename T, std::size_t N>
double frobenius_norm(const Matrix<T, N>& m) {
  double s = 0.0;
  for (const auto& x : m.data) s += std::norm(x);
  return std::sqrt(s);
}

struct JacobiOptions {
  /// Sweeps stop once the off-diagonal Frobenius norm drops below this.
  double off_diagonal_tol = 1e-13;
  int max_sweeps = 64;
};

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending. Only the upper triangle is read.
template <std::size_t N>
std::array<double, N> jacobi_eigenvalues(Matrix<double, N> a, const JacobiOptions& opts = {}) {
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);

  auto off_norm = [&a] {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < opts.max_sweeps && off_norm() > opts.off_diagonal_tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, tau) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;

        for (std::size_t k = 0; k < N; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::array<double, N> ev;
  for (std::size_t i = 0; i < N; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Closed-form eigenvalues of a 2×2 Hermitian matrix, ascending.
inline std::array<double, 2> hermitian2_eigenvalues(const ComplexMatrix2& m) {
  const double mean = 0.5 * (m(0, 0).real() + m(1, 1).real());
  const double half_gap = 0.5 * (m(0, 0).real() - m(1, 1).real());
  const double r = std::hypot(half_gap, std::abs(m(0, 1)));
  return {mean - r, mean + r};
}

}  // namespace relchan
