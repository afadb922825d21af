#pragma once

#include <span>

#include "sgqst/pauli.hpp"

namespace sgqst::kernels::detail {

void check_combination(std::span<const double> coeffs, std::span<const PauliString> ops, Index dim);

}  // namespace sgqst::kernels::detail
