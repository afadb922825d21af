#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace sgqst {

/// Objective returning f(x) and writing the gradient into `grad` (pre-sized to x.size()).
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  static Box uniform(Eigen::Index size, double bound) {
    return {Eigen::VectorXd::Constant(size, -bound), Eigen::VectorXd::Constant(size, bound)};
  }
};

struct LbfgsbOptions {
  int max_iters = 500;
  double grad_tol = 1e-8;  // on the projected-gradient infinity norm
  int memory = 10;
  double c1 = 1e-4;  // sufficient decrease
  double c2 = 0.9;   // curvature
  int max_line_search = 40;
};

struct LbfgsbResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  double projected_grad_norm = 0.0;
  std::string message;
};

/// Infinity norm of P(x - g) - x, the first-order optimality measure on a box.
double projected_gradient_norm(const Eigen::VectorXd& x, const Eigen::VectorXd& g, const Box& box);

/// Limited-memory BFGS on a box.
///
/// Each iteration fixes the variables held at a bound by the gradient, takes
/// the two-loop quasi-Newton direction on the rest, and runs a strong-Wolfe
/// line search along that ray capped at the first bound it reaches (a step
/// that hits the cap only needs sufficient decrease). If the line search
/// fails, a backtracking projected steepest-descent step is tried; if that
/// also fails, the best iterate is returned with converged = false.
/// Accepted objective values are monotone non-increasing.
LbfgsbResult lbfgsb_minimize(const Objective& objective, Eigen::VectorXd x0, const Box& box,
                             const LbfgsbOptions& options = {});

}  // namespace sgqst
