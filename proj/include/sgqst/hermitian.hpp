#pragma once

// Dense Hermitian kernels: spectral decomposition and the matrix functions
// built on it. Every routine here goes through eigh(), which is adequate at
// the dimensions tomography works with (2^n <= 32 in the benchmarks).

#include <Eigen/Dense>

#include "sgqst/density_matrix.hpp"
#include "sgqst/pauli.hpp"

namespace sgqst {

/// Relative Hermiticity residual accepted by eigh(): ||H - H^dag|| <= tol * ||H||.
inline constexpr double kHermitianRelTol = 1e-9;
/// Eigenvalues of a PSD input may dip this far below zero before sqrtm_psd rejects it.
inline constexpr double kPsdNegativeTol = 1e-10;
/// Below this eigenvalue gap the exponential divided difference uses the midpoint limit.
inline constexpr double kDegenerateGap = 1e-9;
/// expm_hermitian refuses spectra with max |w| above this.
inline constexpr double kMaxExponent = 700.0;

struct HermitianEig {
  Eigen::VectorXd values;  // ascending
  CMatrix vectors;         // orthonormal columns

  /// V diag(f(w)) V^dag
  template <typename F>
  CMatrix apply(F&& f) const {
    Eigen::VectorXd mapped = values.unaryExpr(std::forward<F>(f));
    return vectors * mapped.asDiagonal() * vectors.adjoint();
  }
};

bool is_hermitian(const CMatrix& h, double rel_tol = kHermitianRelTol);

/// Full spectral decomposition. Throws std::invalid_argument for non-square
/// or non-Hermitian input and std::runtime_error if the solver fails.
HermitianEig eigh(const CMatrix& h);

CMatrix expm_hermitian(const CMatrix& h);
CMatrix sqrtm_psd(const CMatrix& a);

/// (e^a - e^b) / (a - b), with the midpoint limit e^{(a+b)/2} when |a - b| < kDegenerateGap.
double exp_divided_difference(double a, double b);

/// Directional derivative D exp(H)[V] via the Daleckii-Krein formula.
CMatrix frechet_expm(const CMatrix& h, const CMatrix& direction);
/// Same, reusing a decomposition of H.
CMatrix frechet_expm(const HermitianEig& eig, const CMatrix& direction);

/// Euclidean projection of v onto the probability simplex {p >= 0, sum p = 1}.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

/// Frobenius-closest unit-trace PSD matrix to a Hermitian input.
DensityMatrix project_to_density(const CMatrix& a);

}  // namespace sgqst
