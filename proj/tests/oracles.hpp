#pragma once

// Brute-force references used by the tests. Nothing here calls into the
// library's bit-twiddling paths: Pauli matrices are built by explicit
// Kronecker products of 2x2 blocks and traces are dense matrix products.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "sgqst/rng.hpp"

namespace oracle {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline CMatrix single(char c) {
  CMatrix m(2, 2);
  const cplx i(0, 1);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad symbol");
  }
  return m;
}

// leftmost character is the most significant tensor factor
inline CMatrix pauli(const std::string& label) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (char c : label) out = kron(out, single(c));
  return out;
}

inline cplx trace_product(const CMatrix& a, const std::string& label) { return (a * pauli(label)).trace(); }

inline std::vector<std::string> all_labels(int n, bool with_identity = false) {
  std::vector<std::string> out;
  std::size_t total = std::size_t{1} << (2 * n);
  for (std::size_t k = with_identity ? 0 : 1; k < total; ++k) {
    std::string s(static_cast<std::size_t>(n), 'I');
    std::size_t v = k;
    for (int q = n - 1; q >= 0; --q) {
      s[static_cast<std::size_t>(q)] = "IXYZ"[v % 4];
      v /= 4;
    }
    out.push_back(s);
  }
  return out;
}

inline CMatrix random_complex(sgqst::CounterRng& rng, Eigen::Index rows, Eigen::Index cols) {
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
  return m;
}

inline CMatrix random_hermitian(sgqst::CounterRng& rng, Eigen::Index d, double scale = 1.0) {
  const CMatrix a = random_complex(rng, d, d);
  return scale * 0.5 * (a + a.adjoint());
}

// Ginibre-distributed mixed state of the given rank
inline CMatrix random_density(sgqst::CounterRng& rng, Eigen::Index d, Eigen::Index rank = -1) {
  if (rank < 0) rank = d;
  const CMatrix g = random_complex(rng, d, rank);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return 0.5 * (rho + rho.adjoint());
}

// fidelity straight from the definition, sqrt via eigen-decomposition
inline double fidelity(const CMatrix& a, const CMatrix& b) {
  auto psd_sqrt = [](const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
    Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return CMatrix(es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint());
  };
  const CMatrix sb = psd_sqrt(b);
  const CMatrix inner = psd_sqrt(sb * a * sb);
  const double t = inner.trace().real();
  return t * t;
}

// central differences of a scalar function of a real vector
inline Eigen::VectorXd central_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                        const Eigen::VectorXd& x, double h = 1e-5) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    Eigen::VectorXd xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    g[k] = (f(xp) - f(xm)) / (2 * h);
  }
  return g;
}

// matrix exponential by scaling and squaring of a Taylor series, no eigensolver
inline CMatrix expm_taylor(const CMatrix& a) {
  int squarings = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.25) {
    norm /= 2;
    ++squarings;
  }
  const CMatrix s = a / std::pow(2.0, squarings);
  CMatrix term = CMatrix::Identity(a.rows(), a.cols());
  CMatrix out = term;
  for (int k = 1; k < 30; ++k) {
    term = term * s / static_cast<double>(k);
    out += term;
  }
  for (int k = 0; k < squarings; ++k) out = out * out;
  return out;
}

inline double rel_err(double a, double b, double floor = 1e-8) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace oracle
