#include <chrono>
#include <stdexcept>

#include "restarts.hpp"
#include "sgqst/estimators.hpp"
#include "sgqst/hermitian.hpp"
#include "sgqst/kernels.hpp"

namespace sgqst {

namespace {

double squared_deviation(const CMatrix& rho, const ExpectationMap& estimates) {
  std::vector<PauliString> ops;
  std::vector<double> targets;
  for (const auto& [p, m] : estimates) {
    ops.push_back(p);
    targets.push_back(m);
  }
  const auto predicted = kernels::expectations(rho, ops);
  double loss = 0.0;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const double r = predicted[k] - targets[k];
    loss += r * r;
  }
  return loss;
}

}  // namespace

LinearInversion linear_inversion(const ExpectationMap& estimates, int n) {
  LinearInversion out;
  out.matrix = from_pauli_vector(estimates, n);
  out.min_eigenvalue = eigh(out.matrix).values.minCoeff();
  out.negative = out.min_eigenvalue < -kStateTol;
  for (const auto& p : enumerate_paulis(n, false)) {
    if (!estimates.contains(p)) out.missing.push_back(p);
  }
  return out;
}

LinearInversion linear_inversion(const Dataset& dataset) { return linear_inversion(dataset.estimates(), dataset.n); }

ReconstructionResult psd_estimate(const ExpectationMap& estimates, int n) {
  const auto start = std::chrono::steady_clock::now();
  const LinearInversion inversion = linear_inversion(estimates, n);
  ReconstructionResult result{
      .estimator = "PSD",
      .state = project_to_density(inversion.matrix),
      .params = {},
      .operators = {},
      .final_loss = 0.0,
      .iterations = 0,
      .restarts_used = 0,
      .wall_ms = 0.0,
      .converged = true,
      .warnings = {},
  };
  result.final_loss = squared_deviation(result.state.matrix(), estimates);
  if (inversion.negative) {
    result.warnings.push_back("linear inversion had negative eigenvalue " + std::to_string(inversion.min_eigenvalue));
  }
  if (!inversion.missing.empty()) {
    result.warnings.push_back(std::to_string(inversion.missing.size()) + " operator(s) missing; treated as 0");
  }
  result.wall_ms = detail::elapsed_ms(start);
  return result;
}

ReconstructionResult psd_estimate(const Dataset& dataset) { return psd_estimate(dataset.estimates(), dataset.n); }

double recompute_loss(const ReconstructionResult& result, const ExpectationMap& estimates) {
  const int n = result.state.num_qubits();
  const Index dim = dense_dim(n);
  if (result.estimator == "PSD") return squared_deviation(result.state.matrix(), estimates);
  const Eigen::Map<const Eigen::VectorXd> params(result.params.data(), static_cast<Index>(result.params.size()));
  if (result.estimator == "MLE") {
    const OperatorSet ops = full_set(n);
    return mle_loss_grad(CholeskyParams(n, params), ops, targets_for(ops, estimates)).loss;
  }
  const OperatorSet ops(n, SetTag::Custom, result.operators);
  const CMatrix rho = gibbs_matrix(ops.span(), params, dim);
  const auto targets = targets_for(ops, estimates);
  const auto predicted = kernels::expectations(rho, ops.span());
  double loss = 0.0;
  for (std::size_t k = 0; k < targets.size(); ++k) loss += (predicted[k] - targets[k]) * (predicted[k] - targets[k]);
  return loss;
}

}  // namespace sgqst
