#pragma once

#include "sgqst/pauli.hpp"

namespace sgqst {

/// Tolerance for the Hermitian / unit-trace / PSD checks on a DensityMatrix.
inline constexpr double kStateTol = 1e-9;

/// A validated n-qubit state: Hermitian, unit trace and PSD, each within kStateTol.
///
/// The stored matrix is exactly Hermitian (the input is symmetrized after
/// validation).
class DensityMatrix {
 public:
  /// Throws std::invalid_argument when any invariant is violated.
  explicit DensityMatrix(CMatrix m);

  const CMatrix& matrix() const { return m_; }
  int num_qubits() const { return n_; }
  Index dim() const { return m_.rows(); }

  double purity() const;
  double min_eigenvalue() const;

 private:
  CMatrix m_;
  int n_ = 0;
};

}  // namespace sgqst
