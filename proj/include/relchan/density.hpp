#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "relchan/linalg.hpp"

namespace relchan {

/// Raised when a matrix fails the Hermitian / unit-trace / PSD checks.
class InvalidStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kStateTolerance = 1e-10;

/// Qubit density operator. Stored as a complex Hermitian matrix; every
/// operator built from closed forms is real symmetric, the 3D quadrature
/// oracle may produce small imaginary parts.
class DensityMatrix2 {
 public:
  /// Validates hermiticity, trace and positivity to `tol`.
  explicit DensityMatrix2(const ComplexMatrix2& m, double tol = kStateTolerance);
  explicit DensityMatrix2(const RealMatrix2& m, double tol = kStateTolerance);

  const ComplexMatrix2& matrix() const { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  /// Ascending.
  std::array<double, 2> eigenvalues() const { return hermitian2_eigenvalues(m_); }

  /// Real part; throws InvalidStateError if an imaginary part exceeds `tol`.
  RealMatrix2 real_matrix(double tol = kStateTolerance) const;

 private:
  ComplexMatrix2 m_;
};

/// Two-qubit density operator restricted to real symmetric matrices, which
/// covers every tensor-product mixture of real qubit states.
class DensityMatrix4 {
 public:
  explicit DensityMatrix4(const RealMatrix4& m, double tol = kStateTolerance);

  const RealMatrix4& matrix() const { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  /// Ascending, from the Jacobi solver.
  const std::array<double, 4>& eigenvalues() const { return eigenvalues_; }

 private:
  RealMatrix4 m_;
  std::array<double, 4> eigenvalues_;
};

/// ω₁ ⊗ ω₂ for real qubit states.
DensityMatrix4 tensor(const DensityMatrix2& a, const DensityMatrix2& b);

}  // namespace relchan
