#include "sgqst/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sgqst/kernels.hpp"
#include "sgqst/state.hpp"

namespace sgqst {

double target_fidelity(const DensityMatrix& result, const DensityMatrix& target) { return fidelity(result, target); }

double mle_agreement(const DensityMatrix& model, const DensityMatrix& mle) { return fidelity(model, mle); }

std::vector<ResidualEntry> residuals(const DensityMatrix& mle, const DensityMatrix& model,
                                     std::span<const PauliString> probe) {
  if (probe.empty()) throw std::invalid_argument("probe set is empty");
  if (mle.dim() != model.dim()) throw std::invalid_argument("dimension mismatch between reference and model");
  const auto ref = kernels::expectations(mle.matrix(), probe);
  const auto fit = kernels::expectations(model.matrix(), probe);
  std::vector<ResidualEntry> out;
  out.reserve(probe.size());
  for (std::size_t k = 0; k < probe.size(); ++k) out.push_back({probe[k], ref[k] - fit[k]});
  return out;
}

double observable_error(std::span<const ResidualEntry> entries) {
  if (entries.empty()) throw std::invalid_argument("probe set is empty");
  double total = 0.0;
  for (const auto& e : entries) total += e.delta * e.delta;
  return total / static_cast<double>(entries.size());
}

double observable_error(const DensityMatrix& mle, const DensityMatrix& model, std::span<const PauliString> probe) {
  const auto entries = residuals(mle, model, probe);
  return observable_error(entries);
}

std::vector<ResidualEntry> top_k_residuals(std::span<const ResidualEntry> entries, std::size_t k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::vector<ResidualEntry> sorted(entries.begin(), entries.end());
  std::sort(sorted.begin(), sorted.end(), [](const ResidualEntry& a, const ResidualEntry& b) {
    const double ma = std::abs(a.delta);
    const double mb = std::abs(b.delta);
    if (ma != mb) return ma > mb;
    return a.pauli < b.pauli;
  });
  if (sorted.size() > k) sorted.erase(sorted.begin() + static_cast<std::ptrdiff_t>(k), sorted.end());
  return sorted;
}

}  // namespace sgqst
