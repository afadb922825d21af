#pragma once

#include <span>
#include <vector>

#include "sgqst/density_matrix.hpp"
#include "sgqst/operator_sets.hpp"

namespace sgqst {

struct ResidualEntry {
  PauliString pauli;
  double delta;  // <P>_reference - <P>_model
};

/// Fidelity of a reconstruction with the ideal target.
double target_fidelity(const DensityMatrix& result, const DensityMatrix& target);

/// Fidelity of a model reconstruction with the MLE reconstruction.
double mle_agreement(const DensityMatrix& model, const DensityMatrix& mle);

/// Delta(P) = <P>_mle - <P>_model for every probe operator, in probe order.
/// Throws std::invalid_argument for an empty probe set or mismatched dimensions.
std::vector<ResidualEntry> residuals(const DensityMatrix& mle, const DensityMatrix& model,
                                     std::span<const PauliString> probe);

/// Mean of squared residuals over the probe set.
double observable_error(const DensityMatrix& mle, const DensityMatrix& model, std::span<const PauliString> probe);
double observable_error(std::span<const ResidualEntry> entries);

/// The k largest |delta|, ties broken by ascending label. k >= 1.
std::vector<ResidualEntry> top_k_residuals(std::span<const ResidualEntry> entries, std::size_t k);

}  // namespace sgqst
