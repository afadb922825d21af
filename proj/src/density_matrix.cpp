#include "sgqst/density_matrix.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sgqst/hermitian.hpp"

namespace sgqst {

DensityMatrix::DensityMatrix(CMatrix m) {
  if (m.rows() != m.cols() || m.rows() < 2 || !std::has_single_bit(static_cast<std::uint64_t>(m.rows()))) {
    throw std::invalid_argument("density matrix must be square with power-of-two dimension >= 2");
  }
  n_ = std::countr_zero(static_cast<std::uint64_t>(m.rows()));
  dense_dim(n_);

  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kStateTol) {
    throw std::invalid_argument("density matrix is not Hermitian (residual " + std::to_string(asym) + ")");
  }
  m_ = 0.5 * (m + m.adjoint());

  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kStateTol) {
    throw std::invalid_argument("density matrix trace is " + std::to_string(tr) + ", expected 1");
  }
  const double lo = min_eigenvalue();
  if (lo < -kStateTol) {
    throw std::invalid_argument("density matrix has negative eigenvalue " + std::to_string(lo));
  }
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double DensityMatrix::min_eigenvalue() const { return eigh(m_).values.minCoeff(); }

}  // namespace sgqst
