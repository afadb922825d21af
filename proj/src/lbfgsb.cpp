#include "sgqst/lbfgsb.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>

namespace sgqst {

namespace {

using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Trial {
  double alpha = 0.0;
  double f = 0.0;
  double slope = 0.0;  // g(x + alpha d) . d
  VectorXd x;
  VectorXd g;
};

VectorXd clamp_to(const VectorXd& x, const Box& box) {
  VectorXd out = x.cwiseMax(box.lower).cwiseMin(box.upper);
  // snap near-bound values so a blocked variable lands exactly on its bound
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double tol_lo = 1e-14 * (1.0 + std::abs(box.lower(i)));
    const double tol_hi = 1e-14 * (1.0 + std::abs(box.upper(i)));
    if (out(i) - box.lower(i) < tol_lo) out(i) = box.lower(i);
    if (box.upper(i) - out(i) < tol_hi) out(i) = box.upper(i);
  }
  return out;
}

class Memory {
 public:
  explicit Memory(int capacity) : capacity_(static_cast<std::size_t>(std::max(capacity, 1))) {}

  void push(VectorXd s, VectorXd y) {
    s_.push_back(std::move(s));
    y_.push_back(std::move(y));
    if (s_.size() > capacity_) {
      s_.pop_front();
      y_.pop_front();
    }
  }
  void clear() {
    s_.clear();
    y_.clear();
  }
  bool empty() const { return s_.empty(); }

  /// -H q on the free variables (mask entries 1 = free, 0 = fixed).
  VectorXd direction(const VectorXd& g, const VectorXd& mask) const {
    VectorXd q = g.cwiseProduct(mask);
    const std::size_t m = s_.size();
    std::vector<double> alpha(m, 0.0);
    std::vector<double> rho(m, 0.0);
    std::vector<VectorXd> sm(m);
    std::vector<VectorXd> ym(m);
    for (std::size_t i = 0; i < m; ++i) {
      sm[i] = s_[i].cwiseProduct(mask);
      ym[i] = y_[i].cwiseProduct(mask);
      const double sy = sm[i].dot(ym[i]);
      rho[i] = sy > 0.0 ? 1.0 / sy : 0.0;
    }
    for (std::size_t k = m; k-- > 0;) {
      if (rho[k] == 0.0) continue;
      alpha[k] = rho[k] * sm[k].dot(q);
      q -= alpha[k] * ym[k];
    }
    double gamma = 1.0;
    for (std::size_t k = m; k-- > 0;) {
      if (rho[k] == 0.0) continue;
      const double yy = ym[k].squaredNorm();
      if (yy > 0.0) gamma = (1.0 / rho[k]) / yy;
      break;
    }
    q *= gamma;
    for (std::size_t k = 0; k < m; ++k) {
      if (rho[k] == 0.0) continue;
      const double beta = rho[k] * ym[k].dot(q);
      q += (alpha[k] - beta) * sm[k];
    }
    return -q;
  }

 private:
  std::size_t capacity_;
  std::deque<VectorXd> s_;
  std::deque<VectorXd> y_;
};

class LineSearch {
 public:
  LineSearch(const Objective& objective, const Box& box, const VectorXd& x, const VectorXd& d, double f0,
             double slope0, const LbfgsbOptions& options, int& evaluations)
      : objective_(objective), box_(box), x_(x), d_(d), f0_(f0), slope0_(slope0), options_(options),
        evaluations_(evaluations) {}

  /// Strong Wolfe search on (0, alpha_max]; a step equal to alpha_max only
  /// needs sufficient decrease since the ray leaves the box beyond it.
  std::optional<Trial> run(double alpha0, double alpha_max) {
    Trial prev{0.0, f0_, slope0_, x_, {}};
    double a = alpha0;
    for (int i = 0; i < options_.max_line_search; ++i) {
      Trial cur = eval(a);
      if (approx_wolfe(cur)) return cur;
      if (!std::isfinite(cur.f) || cur.f > f0_ + options_.c1 * a * slope0_ || (i > 0 && cur.f >= prev.f)) {
        return zoom(std::move(prev), std::move(cur));
      }
      if (std::abs(cur.slope) <= -options_.c2 * slope0_) return cur;
      if (cur.slope >= 0.0) return zoom(std::move(cur), std::move(prev));
      if (a >= alpha_max) return cur;
      prev = std::move(cur);
      a = std::min(4.0 * a, alpha_max);
    }
    return prev.alpha > 0.0 ? std::optional<Trial>(std::move(prev)) : std::nullopt;
  }

 private:
  Trial eval(double a) {
    Trial t;
    t.alpha = a;
    t.x = clamp_to(x_ + a * d_, box_);
    t.g = VectorXd::Zero(x_.size());
    t.f = objective_(t.x, t.g);
    t.slope = t.g.dot(d_);
    ++evaluations_;
    return t;
  }

  // approximate Wolfe: f unchanged to rounding, curvature condition holds
  bool approx_wolfe(const Trial& t) const {
    if (!std::isfinite(t.f) || t.f > f0_) return false;
    const double noise = 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(f0_), 1e-300);
    if (f0_ - t.f > noise) return false;
    return std::abs(t.slope) <= -options_.c2 * slope0_;
  }

  static double cubic_min(const Trial& a, const Trial& b) {
    const double d1 = a.slope + b.slope - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
    const double disc = d1 * d1 - a.slope * b.slope;
    if (!(disc >= 0.0) || !std::isfinite(b.f)) return 0.5 * (a.alpha + b.alpha);
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    const double denom = b.slope - a.slope + 2.0 * d2;
    if (denom == 0.0) return 0.5 * (a.alpha + b.alpha);
    return b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / denom;
  }

  // lo always satisfies sufficient decrease; hi brackets a minimizer with it.
  std::optional<Trial> zoom(Trial lo, Trial hi) {
    for (int j = 0; j < options_.max_line_search; ++j) {
      const double left = std::min(lo.alpha, hi.alpha);
      const double right = std::max(lo.alpha, hi.alpha);
      const double width = right - left;
      if (width <= 1e-16 * std::max(1.0, right)) break;
      double a = cubic_min(lo, hi);
      if (!std::isfinite(a) || a < left + 0.1 * width || a > right - 0.1 * width) a = left + 0.5 * width;
      Trial cur = eval(a);
      if (approx_wolfe(cur)) return cur;
      if (!std::isfinite(cur.f) || cur.f > f0_ + options_.c1 * a * slope0_ || cur.f >= lo.f) {
        hi = std::move(cur);
      } else {
        if (std::abs(cur.slope) <= -options_.c2 * slope0_) return cur;
        if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = std::move(lo);
        lo = std::move(cur);
      }
    }
    // interval collapsed: keep the best sufficient-decrease point if there is one
    if (lo.alpha > 0.0 && lo.f < f0_) return lo;
    return std::nullopt;
  }

  const Objective& objective_;
  const Box& box_;
  const VectorXd& x_;
  const VectorXd& d_;
  double f0_;
  double slope0_;
  const LbfgsbOptions& options_;
  int& evaluations_;
};

std::optional<Trial> projected_descent(const Objective& objective, const Box& box, const VectorXd& x,
                                       const VectorXd& g, double f, const LbfgsbOptions& options,
                                       int& evaluations) {
  double alpha = 1.0;
  for (int i = 0; i < 60; ++i, alpha *= 0.5) {
    Trial t;
    t.alpha = alpha;
    t.x = clamp_to(x - alpha * g, box);
    const VectorXd step = t.x - x;
    if (step.lpNorm<Eigen::Infinity>() == 0.0) return std::nullopt;
    t.g = VectorXd::Zero(x.size());
    t.f = objective(t.x, t.g);
    ++evaluations;
    if (std::isfinite(t.f) && t.f <= f + options.c1 * g.dot(step) && t.f < f) return t;
  }
  return std::nullopt;
}

}  // namespace

double projected_gradient_norm(const VectorXd& x, const VectorXd& g, const Box& box) {
  const VectorXd projected = (x - g).cwiseMax(box.lower).cwiseMin(box.upper);
  return (projected - x).lpNorm<Eigen::Infinity>();
}

LbfgsbResult lbfgsb_minimize(const Objective& objective, VectorXd x0, const Box& box,
                             const LbfgsbOptions& options) {
  const Eigen::Index n = x0.size();
  if (box.lower.size() != n || box.upper.size() != n) throw std::invalid_argument("lbfgsb: bound size mismatch");
  if ((box.lower.array() > box.upper.array()).any()) throw std::invalid_argument("lbfgsb: lower bound above upper");
  if (!box.lower.allFinite() || !box.upper.allFinite()) throw std::invalid_argument("lbfgsb: bounds must be finite");
  if (options.max_iters < 0 || options.memory < 1 || !(options.grad_tol > 0.0) ||
      !(0.0 < options.c1 && options.c1 < options.c2 && options.c2 < 1.0)) {
    throw std::invalid_argument("lbfgsb: invalid options");
  }

  LbfgsbResult result;
  VectorXd x = clamp_to(x0, box);
  VectorXd g = VectorXd::Zero(n);
  double f = objective(x, g);
  result.evaluations = 1;
  if (!std::isfinite(f)) throw std::invalid_argument("lbfgsb: objective is not finite at the start point");

  Memory memory(options.memory);
  int iter = 0;
  for (; iter < options.max_iters; ++iter) {
    if (projected_gradient_norm(x, g, box) <= options.grad_tol) {
      result.converged = true;
      result.message = "projected gradient below tolerance";
      break;
    }

    VectorXd mask(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const bool pinned = (x(i) <= box.lower(i) && g(i) > 0.0) || (x(i) >= box.upper(i) && g(i) < 0.0);
      mask(i) = pinned ? 0.0 : 1.0;
    }
    auto blocked = [&](VectorXd& d) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if ((x(i) <= box.lower(i) && d(i) < 0.0) || (x(i) >= box.upper(i) && d(i) > 0.0)) d(i) = 0.0;
      }
    };

    VectorXd d = memory.direction(g, mask);
    blocked(d);
    double slope = g.dot(d);
    if (!(slope < 0.0) || !d.allFinite()) {
      memory.clear();
      d = -g.cwiseProduct(mask);
      blocked(d);
      slope = g.dot(d);
    }

    std::optional<Trial> step;
    if (slope < 0.0) {
      double alpha_max = kInf;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (d(i) < 0.0) alpha_max = std::min(alpha_max, (box.lower(i) - x(i)) / d(i));
        if (d(i) > 0.0) alpha_max = std::min(alpha_max, (box.upper(i) - x(i)) / d(i));
      }
      double alpha0 = memory.empty() ? std::min(1.0, 1.0 / d.lpNorm<Eigen::Infinity>()) : 1.0;
      alpha0 = std::min(alpha0, alpha_max);
      if (alpha0 > 0.0) {
        LineSearch search(objective, box, x, d, f, slope, options, result.evaluations);
        step = search.run(alpha0, alpha_max);
      }
    }
    if (!step) {
      memory.clear();
      step = projected_descent(objective, box, x, g, f, options, result.evaluations);
    }
    if (!step) {
      result.message = "line search and projected-gradient fallback both failed";
      break;
    }

    VectorXd s = step->x - x;
    VectorXd y = step->g - g;
    const double sy = s.dot(y);
    if (std::isfinite(sy) && sy > 1e-10 * y.squaredNorm()) memory.push(std::move(s), std::move(y));
    x = std::move(step->x);
    g = std::move(step->g);
    f = step->f;
  }

  result.iterations = iter;
  result.projected_grad_norm = projected_gradient_norm(x, g, box);
  if (!result.converged && result.projected_grad_norm <= options.grad_tol) {
    result.converged = true;
    result.message = "projected gradient below tolerance";
  }
  if (!result.converged && result.message.empty()) result.message = "iteration limit reached";
  result.x = std::move(x);
  result.f = f;
  return result;
}

}  // namespace sgqst
