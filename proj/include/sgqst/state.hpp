#pragma once

#include <map>
#include <utility>
#include <vector>

#include "sgqst/density_matrix.hpp"
#include "sgqst/pauli.hpp"

namespace sgqst {

/// Pauli label -> real expectation (or coefficient). Ordered by label.
using ExpectationMap = std::map<PauliString, double>;

/// Eigenvalues at or below this are treated as exact zeros inside fidelity().
inline constexpr double kSpectralFloor = 1e-13;

/// |GHZ_n><GHZ_n| with GHZ_n = (|0...0> + |1...1>)/sqrt(2).
DensityMatrix ghz(int n);

/// I / 2^n
DensityMatrix maximally_mixed(int n);

/// Pure state |psi><psi| for a (not necessarily normalized) vector.
DensityMatrix pure_state(const Eigen::VectorXcd& psi);

/// (1/2^n)(I + sum_P m_P P). Hermitian by construction, not necessarily PSD.
/// Missing operators count as zero; the identity coefficient is fixed to 1.
/// Throws std::invalid_argument for a key of the wrong length or an identity key.
CMatrix from_pauli_vector(const ExpectationMap& coefficients, int n);

/// Tr(rho P) for every non-identity P, in enumerate order.
ExpectationMap to_pauli_vector(const CMatrix& rho, int n);

/// Uhlmann fidelity (Tr sqrt(sqrt(b) a sqrt(b)))^2, clamped to [0, 1].
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// (1/2) sum |eig(a - b)|
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace sgqst
