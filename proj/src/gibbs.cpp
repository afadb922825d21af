#include <chrono>
#include <cmath>
#include <stdexcept>

#include "restarts.hpp"
#include "sgqst/estimators.hpp"
#include "sgqst/hermitian.hpp"
#include "sgqst/kernels.hpp"
#include "sgqst/rng.hpp"

namespace sgqst {

namespace {

// Spectral data of rho = exp(-H) / Z, with exponents a_i = w_min - w_i <= 0.
struct GibbsSpectrum {
  HermitianEig eig;
  Eigen::VectorXd exponents;
  double partition = 0.0;
  CMatrix rho;
};

GibbsSpectrum gibbs_spectrum(std::span<const PauliString> ops, const Eigen::VectorXd& lambdas, Index dim) {
  const std::span<const double> coeffs(lambdas.data(), static_cast<std::size_t>(lambdas.size()));
  GibbsSpectrum out;
  out.eig = eigh(kernels::pauli_combination(coeffs, ops, dim));
  const double lowest = out.eig.values.minCoeff();
  out.exponents = (lowest - out.eig.values.array()).matrix();
  const Eigen::VectorXd weights = out.exponents.array().exp().matrix();
  out.partition = weights.sum();
  out.rho = out.eig.vectors * (weights / out.partition).asDiagonal() * out.eig.vectors.adjoint();
  return out;
}

void check_targets(std::size_t ops, std::size_t targets) {
  if (ops != targets) {
    throw std::invalid_argument("expected " + std::to_string(ops) + " targets, got " + std::to_string(targets));
  }
}

}  // namespace

void OptimizerConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be positive");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("grad_tol must be positive");
  if (restarts < 1) throw std::invalid_argument("restarts must be positive");
  if (lbfgs_memory < 1) throw std::invalid_argument("lbfgs_memory must be positive");
  if (!(lambda_bound > 0.0 && lambda_bound <= kMaxLambdaBound)) {
    throw std::invalid_argument("lambda_bound must be in (0, " + std::to_string(kMaxLambdaBound) + "]");
  }
}

GibbsModel::GibbsModel(OperatorSet ops, Eigen::VectorXd lambdas, double bound)
    : ops_(std::move(ops)), lambdas_(std::move(lambdas)) {
  check_targets(ops_.size(), static_cast<std::size_t>(lambdas_.size()));
  if (!lambdas_.allFinite() || (lambdas_.size() > 0 && lambdas_.cwiseAbs().maxCoeff() > bound)) {
    throw std::invalid_argument("Gibbs coefficients must be finite with |lambda| <= " + std::to_string(bound));
  }
}

CMatrix gibbs_matrix(std::span<const PauliString> ops, const Eigen::VectorXd& lambdas, Index dim) {
  return gibbs_spectrum(ops, lambdas, dim).rho;
}

DensityMatrix gibbs_state(const GibbsModel& model) {
  const Index dim = dense_dim(model.ops().num_qubits());
  return DensityMatrix(gibbs_matrix(model.ops().span(), model.lambdas(), dim));
}

LossGrad gibbs_loss_grad(const GibbsModel& model, std::span<const double> targets) {
  const auto ops = model.ops().span();
  check_targets(ops.size(), targets.size());
  const Index dim = dense_dim(model.ops().num_qubits());
  const GibbsSpectrum spec = gibbs_spectrum(ops, model.lambdas(), dim);

  LossGrad out;
  out.predicted = kernels::expectations(spec.rho, ops);
  std::vector<double> twice_residual(ops.size());
  double coupling = 0.0;  // sum_k 2 r_k <P_k>
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const double r = out.predicted[k] - targets[k];
    out.loss += r * r;
    twice_residual[k] = 2.0 * r;
    coupling += twice_residual[k] * out.predicted[k];
  }

  // d<P_k>/d lambda_j = Tr(dE_j P_k)/Z + <P_j><P_k>, with dE_j = D exp(-H)[-P_j].
  // Contracting with G = sum_k 2 r_k P_k in the eigenbasis of H gives
  // sum_k 2 r_k Tr(dE_j P_k) = -Tr(P_j M), M = V (Phi o V^dag G V) V^dag.
  const CMatrix g = kernels::pauli_combination(twice_residual, ops, dim);
  CMatrix b = spec.eig.vectors.adjoint() * g * spec.eig.vectors;
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) {
      b(i, j) *= exp_divided_difference(spec.exponents(i), spec.exponents(j));
    }
  }
  const CMatrix m = spec.eig.vectors * b * spec.eig.vectors.adjoint();
  const std::vector<cplx> traces = kernels::omp::trace_products(m, ops);

  out.grad.resize(static_cast<Index>(ops.size()));
  for (std::size_t j = 0; j < ops.size(); ++j) {
    out.grad(static_cast<Index>(j)) = -traces[j].real() / spec.partition + out.predicted[j] * coupling;
  }
  return out;
}

std::vector<double> targets_for(const OperatorSet& ops, const ExpectationMap& estimates) {
  std::vector<double> out;
  std::vector<std::string> missing;
  out.reserve(ops.size());
  for (const auto& p : ops) {
    const auto it = estimates.find(p);
    if (it == estimates.end()) {
      missing.push_back(p.label());
      out.push_back(0.0);
    } else {
      out.push_back(it->second);
    }
  }
  if (!missing.empty()) {
    std::string msg = "dataset is missing " + std::to_string(missing.size()) + " operator(s) of " +
                      to_string(ops.tag()) + ":";
    for (const auto& m : missing) msg += " " + m;
    throw std::invalid_argument(msg);
  }
  return out;
}

ReconstructionResult fit_gibbs(const OperatorSet& ops, const ExpectationMap& estimates,
                               const OptimizerConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> targets = targets_for(ops, estimates);
  const auto k = static_cast<Index>(ops.size());
  const Box box = Box::uniform(k, config.lambda_bound);

  LbfgsbOptions options;
  options.max_iters = config.max_iters;
  options.grad_tol = config.grad_tol;
  options.memory = config.lbfgs_memory;

  const Objective objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    LossGrad lg = gibbs_loss_grad(GibbsModel(ops, x, config.lambda_bound), targets);
    grad = std::move(lg.grad);
    return lg.loss;
  };

  const auto outcome = detail::best_of_restarts(config.restarts, [&](int r) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(k);
    if (r > 0) {
      CounterRng rng(derive_stream(config.seed, static_cast<std::uint64_t>(r)));
      for (Index i = 0; i < k; ++i) x0(i) = rng.uniform(-1.0, 1.0);
    }
    return lbfgsb_minimize(objective, x0, box, options);
  });

  const GibbsModel model(ops, outcome.best.x, config.lambda_bound);
  ReconstructionResult result{
      .estimator = to_string(ops.tag()),
      .state = gibbs_state(model),
      .params = std::vector<double>(outcome.best.x.data(), outcome.best.x.data() + k),
      .operators = ops.operators(),
      .final_loss = gibbs_loss_grad(model, targets).loss,
      .iterations = outcome.best.iterations,
      .restarts_used = outcome.restarts,
      .wall_ms = 0.0,
      .converged = outcome.best.converged,
      .warnings = {},
  };
  if (!outcome.best.converged) {
    result.warnings.push_back("optimizer did not converge (" + outcome.best.message + "); best iterate returned");
  }
  result.wall_ms = detail::elapsed_ms(start);
  return result;
}

ReconstructionResult fit_gibbs(const OperatorSet& ops, const Dataset& dataset, const OptimizerConfig& config) {
  if (dataset.n != ops.num_qubits()) throw std::invalid_argument("dataset and operator set qubit counts differ");
  return fit_gibbs(ops, dataset.estimates(), config);
}

}  // namespace sgqst
