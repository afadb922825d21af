#include "sgqst/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace sgqst {

bool is_hermitian(const CMatrix& h, double rel_tol) {
  if (h.rows() != h.cols()) return false;
  return (h - h.adjoint()).norm() <= rel_tol * h.norm();
}

HermitianEig eigh(const CMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("eigh: matrix is not square");
  if (!is_hermitian(h)) throw std::invalid_argument("eigh: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigh: eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix expm_hermitian(const CMatrix& h) {
  const HermitianEig eig = eigh(h);
  const double peak = eig.values.cwiseAbs().maxCoeff();
  if (peak > kMaxExponent) {
    throw std::overflow_error("expm_hermitian: eigenvalue magnitude " + std::to_string(peak) +
                              " exceeds " + std::to_string(kMaxExponent));
  }
  return eig.apply([](double w) { return std::exp(w); });
}

CMatrix sqrtm_psd(const CMatrix& a) {
  const HermitianEig eig = eigh(a);
  const double lo = eig.values.minCoeff();
  if (lo < -kPsdNegativeTol) {
    throw std::domain_error("sqrtm_psd: eigenvalue " + std::to_string(lo) + " is not PSD");
  }
  return eig.apply([](double w) { return std::sqrt(std::max(w, 0.0)); });
}

double exp_divided_difference(double a, double b) {
  const double gap = a - b;
  if (std::abs(gap) < kDegenerateGap) return std::exp(0.5 * (a + b));
  // e^b (e^{a-b} - 1)/(a-b), written to avoid cancellation for small gaps
  if (a > b) return std::exp(b) * std::expm1(gap) / gap;
  return std::exp(a) * std::expm1(-gap) / (-gap);
}

CMatrix frechet_expm(const HermitianEig& eig, const CMatrix& direction) {
  const Index d = eig.values.size();
  if (direction.rows() != d || direction.cols() != d) {
    throw std::invalid_argument("frechet_expm: dimension mismatch");
  }
  if (!is_hermitian(direction)) throw std::invalid_argument("frechet_expm: direction is not Hermitian");
  if (eig.values.cwiseAbs().maxCoeff() > kMaxExponent) {
    throw std::overflow_error("frechet_expm: eigenvalue magnitude exceeds limit");
  }
  CMatrix a = eig.vectors.adjoint() * direction * eig.vectors;
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      a(i, j) *= exp_divided_difference(eig.values(i), eig.values(j));
    }
  }
  return eig.vectors * a * eig.vectors.adjoint();
}

CMatrix frechet_expm(const CMatrix& h, const CMatrix& direction) {
  return frechet_expm(eigh(h), direction);
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  const Index d = v.size();
  if (d == 0) throw std::invalid_argument("project_to_simplex: empty vector");
  std::vector<double> sorted(v.data(), v.data() + d);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0;
  double shift = 0.0;
  for (Index k = 0; k < d; ++k) {
    running += sorted[static_cast<std::size_t>(k)];
    const double candidate = (running - 1.0) / static_cast<double>(k + 1);
    if (sorted[static_cast<std::size_t>(k)] - candidate > 0.0) shift = candidate;
  }
  return (v.array() - shift).cwiseMax(0.0).matrix();
}

DensityMatrix project_to_density(const CMatrix& a) {
  const HermitianEig eig = eigh(a);
  const Eigen::VectorXd p = project_to_simplex(eig.values);
  return DensityMatrix(eig.vectors * p.asDiagonal() * eig.vectors.adjoint());
}

}  // namespace sgqst
