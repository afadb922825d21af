#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sgqst/density_matrix.hpp"
#include "sgqst/measurement.hpp"
#include "sgqst/operator_sets.hpp"
#include "sgqst/state.hpp"

namespace sgqst {

/// Hard ceiling on the Gibbs coefficient bound (keeps exponents representable).
inline constexpr double kMaxLambdaBound = 350.0;
/// Restart losses within this of each other are ties; the lower index wins.
inline constexpr double kRestartTieTol = 1e-12;
/// Scale of the Gaussian perturbations of the Cholesky factor on restarts >= 1.
inline constexpr double kCholeskyRestartScale = 0.1;
/// Box half-width for the (scale-free) Cholesky parameters.
inline constexpr double kCholeskyBound = 1e3;

struct OptimizerConfig {
  int max_iters = 500;
  double grad_tol = 1e-8;
  int restarts = 10;
  std::uint64_t seed = 0;
  double lambda_bound = 30.0;
  int lbfgs_memory = 10;

  void validate() const;
};

struct ReconstructionResult {
  std::string estimator;  // "MLE", "PSD", "G1".."G4", "CUSTOM"
  DensityMatrix state;
  std::vector<double> params;            // lambda_k, or packed Cholesky entries
  std::vector<PauliString> operators;    // model operators (Gibbs) or the fitted set (MLE)
  double final_loss = 0.0;
  int iterations = 0;
  int restarts_used = 0;
  double wall_ms = 0.0;
  bool converged = true;
  std::vector<std::string> warnings;
};

// ---------------------------------------------------------------------------
// Linear inversion

struct LinearInversion {
  CMatrix matrix;                      // Hermitian, unit trace, possibly indefinite
  double min_eigenvalue = 0.0;
  bool negative = false;               // min_eigenvalue < -kStateTol
  std::vector<PauliString> missing;    // non-identity operators absent from the data (treated as 0)
};

LinearInversion linear_inversion(const ExpectationMap& estimates, int n);
LinearInversion linear_inversion(const Dataset& dataset);

/// Linear inversion followed by the Frobenius-closest density-matrix projection.
ReconstructionResult psd_estimate(const ExpectationMap& estimates, int n);
ReconstructionResult psd_estimate(const Dataset& dataset);

// ---------------------------------------------------------------------------
// Structured Gibbs models: rho = exp(-sum_k lambda_k P_k) / Tr(...)

class GibbsModel {
 public:
  /// Throws std::invalid_argument on a length mismatch or |lambda_k| > bound.
  GibbsModel(OperatorSet ops, Eigen::VectorXd lambdas, double bound = kMaxLambdaBound);

  const OperatorSet& ops() const { return ops_; }
  const Eigen::VectorXd& lambdas() const { return lambdas_; }

 private:
  OperatorSet ops_;
  Eigen::VectorXd lambdas_;
};

struct LossGrad {
  double loss = 0.0;
  Eigen::VectorXd grad;
  std::vector<double> predicted;  // Tr(rho P_k) for the model operators
};

/// The normalized exponential as a raw matrix; the spectrum is shifted by its
/// minimum before exponentiating, so no overflow is possible for bounded lambda.
CMatrix gibbs_matrix(std::span<const PauliString> ops, const Eigen::VectorXd& lambdas, Index dim);

DensityMatrix gibbs_state(const GibbsModel& model);

/// Squared-deviation loss sum_k (Tr(rho P_k) - m_k)^2 and its exact gradient.
/// `targets` are aligned with model.ops().
LossGrad gibbs_loss_grad(const GibbsModel& model, std::span<const double> targets);

/// Targets for `ops` read from `estimates`; throws std::invalid_argument naming missing operators.
std::vector<double> targets_for(const OperatorSet& ops, const ExpectationMap& estimates);

ReconstructionResult fit_gibbs(const OperatorSet& ops, const ExpectationMap& estimates,
                               const OptimizerConfig& config);
ReconstructionResult fit_gibbs(const OperatorSet& ops, const Dataset& dataset, const OptimizerConfig& config);

// ---------------------------------------------------------------------------
// Least-squares MLE over rho = T^dag T / Tr(T^dag T), T lower triangular.

/// Packs/unpacks the d^2 real degrees of freedom of T: the d real diagonal
/// entries first, then (Re, Im) of each strictly-lower entry in row-major order.
class CholeskyParams {
 public:
  CholeskyParams(int n, Eigen::VectorXd packed);

  static CholeskyParams from_factor(int n, const CMatrix& t);
  /// T = I / sqrt(2^n), the maximally mixed start.
  static CholeskyParams identity_start(int n);

  int num_qubits() const { return n_; }
  const Eigen::VectorXd& packed() const { return packed_; }
  CMatrix factor() const;
  /// T^dag T / Tr(T^dag T)
  CMatrix state_matrix() const;

  static Eigen::Index packed_size(int n);

 private:
  int n_;
  Eigen::VectorXd packed_;
};

/// Loss over `ops` with targets aligned to them, and the gradient w.r.t. the packed parameters.
LossGrad mle_loss_grad(const CholeskyParams& params, const OperatorSet& ops, std::span<const double> targets);

/// Requires estimates for the full non-identity set.
ReconstructionResult mle_fit(const ExpectationMap& estimates, int n, const OptimizerConfig& config);
ReconstructionResult mle_fit(const Dataset& dataset, const OptimizerConfig& config);

/// Squared-deviation loss of a finished result recomputed from its params (its state for PSD).
double recompute_loss(const ReconstructionResult& result, const ExpectationMap& estimates);

}  // namespace sgqst
