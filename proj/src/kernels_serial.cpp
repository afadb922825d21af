#include <cmath>
#include <stdexcept>

#include "kernels_detail.hpp"
#include "sgqst/kernels.hpp"

namespace sgqst::kernels {

namespace detail {

void check_combination(std::span<const double> coeffs, std::span<const PauliString> ops, Index dim) {
  if (coeffs.size() != ops.size()) {
    throw std::invalid_argument("pauli_combination: " + std::to_string(coeffs.size()) +
                                " coefficients for " + std::to_string(ops.size()) + " operators");
  }
  for (const auto& p : ops) {
    if (p.num_qubits() > kDenseQubitCap || (Index{1} << p.num_qubits()) != dim) {
      throw std::invalid_argument("pauli_combination: operator " + p.label() +
                                  " does not match dimension " + std::to_string(dim));
    }
  }
}

}  // namespace detail

namespace serial {

std::vector<cplx> trace_products(const CMatrix& a, std::span<const PauliString> ops) {
  std::vector<cplx> out(ops.size());
  for (std::size_t k = 0; k < ops.size(); ++k) out[k] = trace_product(a, ops[k]);
  return out;
}

CMatrix pauli_combination(std::span<const double> coeffs, std::span<const PauliString> ops, Index dim) {
  detail::check_combination(coeffs, ops, dim);
  CMatrix h = CMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const double c = coeffs[k];
    if (c == 0.0) continue;
    const auto x = ops[k].x_mask();
    for (Index b = 0; b < dim; ++b) {
      const auto col = static_cast<std::uint64_t>(b);
      h(static_cast<Index>(col ^ x), b) += c * ops[k].phase(col);
    }
  }
  return h;
}

}  // namespace serial

std::vector<double> expectations(const CMatrix& rho, std::span<const PauliString> ops) {
  const std::vector<cplx> traces = omp::trace_products(rho, ops);
  std::vector<double> out(traces.size());
  for (std::size_t k = 0; k < traces.size(); ++k) {
    if (std::abs(traces[k].imag()) > kExpectationImagTol) {
      throw std::invalid_argument("Tr(rho " + ops[k].label() + ") has imaginary part " +
                                  std::to_string(traces[k].imag()) + "; input is not Hermitian");
    }
    out[k] = traces[k].real();
  }
  return out;
}

}  // namespace sgqst::kernels
