#include "relchan/density.hpp"

#include <cmath>
#include <sstream>

namespace relchan {

namespace {

void check_trace_and_spectrum(double trace, double min_eigenvalue, double tol, const char* what) {
  if (!std::isfinite(trace) || std::abs(trace - 1.0) > tol) {
    std::ostringstream os;
    os << what << ": trace " << trace << " deviates from 1 by more than " << tol;
    throw InvalidStateError(os.str());
  }
  if (!(min_eigenvalue >= -tol)) {
    std::ostringstream os;
    os << what << ": eigenvalue " << min_eigenvalue << " below -" << tol;
    throw InvalidStateError(os.str());
  }
}

}  // namespace

DensityMatrix2::DensityMatrix2(const ComplexMatrix2& m, double tol) : m_(m) {
  if (max_abs_diff(m_, adjoint(m_)) > tol) throw InvalidStateError("DensityMatrix2: not Hermitian");
  // Symmetrize so downstream closed forms see an exactly Hermitian matrix.
  m_(0, 0) = m_(0, 0).real();
  m_(1, 1) = m_(1, 1).real();
  m_(1, 0) = std::conj(m_(0, 1));
  check_trace_and_spectrum(m_.trace().real(), eigenvalues()[0], tol, "DensityMatrix2");
}

DensityMatrix2::DensityMatrix2(const RealMatrix2& m, double tol) : DensityMatrix2(to_complex(m), tol) {}

RealMatrix2 DensityMatrix2::real_matrix(double tol) const {
  RealMatrix2 r;
  for (std::size_t k = 0; k < 4; ++k) {
    if (std::abs(m_.data[k].imag()) > tol) throw InvalidStateError("DensityMatrix2: matrix is not real");
    r.data[k] = m_.data[k].real();
  }
  return r;
}

DensityMatrix4::DensityMatrix4(const RealMatrix4& m, double tol) : m_(m) {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (std::abs(m_(i, j) - m_(j, i)) > tol) throw InvalidStateError("DensityMatrix4: not symmetric");
  eigenvalues_ = jacobi_eigenvalues(m_);
  check_trace_and_spectrum(m_.trace(), eigenvalues_[0], tol, "DensityMatrix4");
}

DensityMatrix4 tensor(const DensityMatrix2& a, const DensityMatrix2& b) {
  return DensityMatrix4(kron(a.real_matrix(), b.real_matrix()));
}

}  // namespace relchan
