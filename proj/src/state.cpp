#include "sgqst/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sgqst/hermitian.hpp"
#include "sgqst/kernels.hpp"

namespace sgqst {

namespace {

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
  }
}

// Square root of a state after zeroing eigenvalues at or below the floor and
// renormalizing the clipped spectrum to unit trace.
CMatrix clipped_sqrt(const DensityMatrix& rho) {
  const HermitianEig eig = eigh(rho.matrix());
  Eigen::VectorXd w = eig.values.unaryExpr([](double x) { return x <= kSpectralFloor ? 0.0 : x; });
  w /= w.sum();
  return eig.vectors * w.cwiseSqrt().asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

DensityMatrix ghz(int n) {
  const Index dim = dense_dim(n);
  CMatrix m = CMatrix::Zero(dim, dim);
  m(0, 0) = m(0, dim - 1) = m(dim - 1, 0) = m(dim - 1, dim - 1) = 0.5;
  return DensityMatrix(std::move(m));
}

DensityMatrix maximally_mixed(int n) {
  const Index dim = dense_dim(n);
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix pure_state(const Eigen::VectorXcd& psi) {
  const Eigen::VectorXcd unit = psi.normalized();
  return DensityMatrix(unit * unit.adjoint());
}

CMatrix from_pauli_vector(const ExpectationMap& coefficients, int n) {
  const Index dim = dense_dim(n);
  std::vector<PauliString> ops;
  std::vector<double> coeffs;
  ops.reserve(coefficients.size());
  coeffs.reserve(coefficients.size());
  for (const auto& [p, m] : coefficients) {
    if (p.num_qubits() != n) {
      throw std::invalid_argument("operator '" + p.label() + "' has length " +
                                  std::to_string(p.num_qubits()) + ", expected " + std::to_string(n));
    }
    if (p.is_identity()) throw std::invalid_argument("identity coefficient is fixed to 1");
    ops.push_back(p);
    coeffs.push_back(m);
  }
  CMatrix rho = kernels::pauli_combination(coeffs, ops, dim);
  rho.diagonal().array() += 1.0;
  return rho / static_cast<double>(dim);
}

ExpectationMap to_pauli_vector(const CMatrix& rho, int n) {
  const auto ops = enumerate_paulis(n, false);
  const auto values = kernels::expectations(rho, ops);
  ExpectationMap out;
  for (std::size_t k = 0; k < ops.size(); ++k) out.emplace(ops[k], values[k]);
  return out;
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a, b);
  // nuclear norm of sqrt(a) sqrt(b) equals Tr sqrt(sqrt(b) a sqrt(b))
  const CMatrix product = clipped_sqrt(a) * clipped_sqrt(b);
  Eigen::JacobiSVD<CMatrix> svd(product);
  const double root = svd.singularValues().sum();
  return std::clamp(root * root, 0.0, 1.0);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a, b);
  const HermitianEig eig = eigh(a.matrix() - b.matrix());
  return std::clamp(0.5 * eig.values.cwiseAbs().sum(), 0.0, 1.0);
}

}  // namespace sgqst
