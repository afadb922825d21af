#include <stdexcept>

#include "kernels_detail.hpp"
#include "sgqst/kernels.hpp"

namespace sgqst::kernels {

namespace omp {

namespace {
// below this much work the fork/join overhead dominates
constexpr std::int64_t kMinParallelWork = 1 << 14;
}  // namespace

std::vector<cplx> trace_products(const CMatrix& a, std::span<const PauliString> ops) {
  // validate dimensions up front: exceptions must not escape the parallel region
  for (const auto& p : ops) {
    if (p.num_qubits() > kDenseQubitCap || a.rows() != (Index{1} << p.num_qubits()) ||
        a.cols() != a.rows()) {
      throw std::invalid_argument("dimension mismatch between matrix and Pauli string " + p.label());
    }
  }
  std::vector<cplx> out(ops.size());
  const auto count = static_cast<std::int64_t>(ops.size());
  const bool wide = count * static_cast<std::int64_t>(a.rows()) >= kMinParallelWork;
#pragma omp parallel for schedule(static) if (wide)
  for (std::int64_t k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = trace_product(a, ops[static_cast<std::size_t>(k)]);
  }
  return out;
}

CMatrix pauli_combination(std::span<const double> coeffs, std::span<const PauliString> ops, Index dim) {
  detail::check_combination(coeffs, ops, dim);
  CMatrix h = CMatrix::Zero(dim, dim);
  const auto count = ops.size();
  const bool wide = static_cast<std::int64_t>(count) * dim >= kMinParallelWork;
  // one column per iteration: each thread owns the entries it writes
#pragma omp parallel for schedule(static) if (wide)
  for (Index b = 0; b < dim; ++b) {
    const auto col = static_cast<std::uint64_t>(b);
    for (std::size_t k = 0; k < count; ++k) {
      const double c = coeffs[k];
      if (c == 0.0) continue;
      h(static_cast<Index>(col ^ ops[k].x_mask()), b) += c * ops[k].phase(col);
    }
  }
  return h;
}

}  // namespace omp
}  // namespace sgqst::kernels
