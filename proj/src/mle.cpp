#include <chrono>
#include <cmath>
#include <stdexcept>

#include "restarts.hpp"
#include "sgqst/estimators.hpp"
#include "sgqst/kernels.hpp"
#include "sgqst/rng.hpp"

namespace sgqst {

Eigen::Index CholeskyParams::packed_size(int n) {
  const Index d = dense_dim(n);
  return d * d;
}

CholeskyParams::CholeskyParams(int n, Eigen::VectorXd packed) : n_(n), packed_(std::move(packed)) {
  if (packed_.size() != packed_size(n)) {
    throw std::invalid_argument("Cholesky parameter vector has " + std::to_string(packed_.size()) +
                                " entries, expected " + std::to_string(packed_size(n)));
  }
}

CholeskyParams CholeskyParams::from_factor(int n, const CMatrix& t) {
  const Index d = dense_dim(n);
  if (t.rows() != d || t.cols() != d) throw std::invalid_argument("Cholesky factor has wrong dimension");
  Eigen::VectorXd packed(d * d);
  for (Index a = 0; a < d; ++a) packed(a) = t(a, a).real();
  Index pos = d;
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < a; ++b) {
      packed(pos++) = t(a, b).real();
      packed(pos++) = t(a, b).imag();
    }
  }
  return CholeskyParams(n, std::move(packed));
}

CholeskyParams CholeskyParams::identity_start(int n) {
  const Index d = dense_dim(n);
  Eigen::VectorXd packed = Eigen::VectorXd::Zero(d * d);
  packed.head(d).setConstant(1.0 / std::sqrt(static_cast<double>(d)));
  return CholeskyParams(n, std::move(packed));
}

CMatrix CholeskyParams::factor() const {
  const Index d = Index{1} << n_;
  CMatrix t = CMatrix::Zero(d, d);
  for (Index a = 0; a < d; ++a) t(a, a) = packed_(a);
  Index pos = d;
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < a; ++b) {
      t(a, b) = cplx(packed_(pos), packed_(pos + 1));
      pos += 2;
    }
  }
  return t;
}

CMatrix CholeskyParams::state_matrix() const {
  const CMatrix t = factor();
  const CMatrix s = t.adjoint() * t;
  const double norm = s.trace().real();
  if (!(norm > 0.0)) throw std::domain_error("Cholesky factor is zero");
  return s / norm;
}

LossGrad mle_loss_grad(const CholeskyParams& params, const OperatorSet& ops, std::span<const double> targets) {
  if (ops.size() != targets.size()) throw std::invalid_argument("target count does not match operator count");
  if (ops.num_qubits() != params.num_qubits()) throw std::invalid_argument("qubit count mismatch");
  const Index d = Index{1} << params.num_qubits();
  const CMatrix t = params.factor();
  const CMatrix s = t.adjoint() * t;
  const double norm = s.trace().real();
  if (!(norm > 0.0)) throw std::domain_error("Cholesky factor is zero");
  const CMatrix rho = s / norm;

  LossGrad out;
  out.predicted = kernels::expectations(rho, ops.span());
  std::vector<double> twice_residual(ops.size());
  double coupling = 0.0;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const double r = out.predicted[k] - targets[k];
    out.loss += r * r;
    twice_residual[k] = 2.0 * r;
    coupling += twice_residual[k] * out.predicted[k];
  }

  // dL = Tr(dS W), W = (G - c I)/Tr(S), S = T^dag T; dL = 2 Re Tr(dT Q), Q = W T^dag.
  CMatrix w = kernels::pauli_combination(twice_residual, ops.span(), d);
  w.diagonal().array() -= coupling;
  w /= norm;
  const CMatrix q = w * t.adjoint();

  out.grad.resize(d * d);
  for (Index a = 0; a < d; ++a) out.grad(a) = 2.0 * q(a, a).real();
  Index pos = d;
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < a; ++b) {
      out.grad(pos++) = 2.0 * q(b, a).real();
      out.grad(pos++) = -2.0 * q(b, a).imag();
    }
  }
  return out;
}

ReconstructionResult mle_fit(const ExpectationMap& estimates, int n, const OptimizerConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const OperatorSet ops = full_set(n);
  const std::vector<double> targets = targets_for(ops, estimates);
  const Index size = CholeskyParams::packed_size(n);
  const Box box = Box::uniform(size, kCholeskyBound);

  LbfgsbOptions options;
  options.max_iters = config.max_iters;
  options.grad_tol = config.grad_tol;
  options.memory = config.lbfgs_memory;

  const Objective objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    LossGrad lg = mle_loss_grad(CholeskyParams(n, x), ops, targets);
    grad = std::move(lg.grad);
    return lg.loss;
  };

  const auto outcome = detail::best_of_restarts(config.restarts, [&](int r) {
    Eigen::VectorXd x0 = CholeskyParams::identity_start(n).packed();
    if (r > 0) {
      CounterRng rng(derive_stream(config.seed, static_cast<std::uint64_t>(r)));
      for (Index i = 0; i < size; ++i) x0(i) += kCholeskyRestartScale * rng.normal();
    }
    return lbfgsb_minimize(objective, x0, box, options);
  });

  const CholeskyParams best(n, outcome.best.x);
  ReconstructionResult result{
      .estimator = "MLE",
      .state = DensityMatrix(best.state_matrix()),
      .params = std::vector<double>(outcome.best.x.data(), outcome.best.x.data() + size),
      .operators = {},
      .final_loss = mle_loss_grad(best, ops, targets).loss,
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

ReconstructionResult mle_fit(const Dataset& dataset, const OptimizerConfig& config) {
  return mle_fit(dataset.estimates(), dataset.n, config);
}

}  // namespace sgqst
