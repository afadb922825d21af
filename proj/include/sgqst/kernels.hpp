#pragma once

// Data-parallel inner loops of the reconstruction pipeline.
//
// Each kernel has a serial reference in kernels::serial and an OpenMP
// version in kernels::omp. Both visit the operators of every output entry in
// the same order, so their results are bitwise identical; the unqualified
// kernels::* entry points dispatch to the OpenMP version. Inside an enclosing
// parallel region (e.g. concurrent optimizer restarts) the OpenMP loops run
// on the calling thread only.

#include <span>
#include <vector>

#include "sgqst/pauli.hpp"

namespace sgqst::kernels {

namespace serial {

/// Complex traces Tr(A P_k) for every operator.
std::vector<cplx> trace_products(const CMatrix& a, std::span<const PauliString> ops);

/// sum_k c_k P_k as a dense dim x dim matrix.
CMatrix pauli_combination(std::span<const double> coeffs, std::span<const PauliString> ops, Index dim);

}  // namespace serial

namespace omp {

std::vector<cplx> trace_products(const CMatrix& a, std::span<const PauliString> ops);
CMatrix pauli_combination(std::span<const double> coeffs, std::span<const PauliString> ops, Index dim);

}  // namespace omp

/// Real expectations Tr(rho P_k); throws std::invalid_argument if any
/// imaginary part exceeds kExpectationImagTol.
std::vector<double> expectations(const CMatrix& rho, std::span<const PauliString> ops);

inline CMatrix pauli_combination(std::span<const double> coeffs, std::span<const PauliString> ops,
                                 Index dim) {
  return omp::pauli_combination(coeffs, ops, dim);
}

}  // namespace sgqst::kernels
