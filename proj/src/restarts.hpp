#pragma once

#include <chrono>
#include <exception>
#include <functional>
#include <vector>

#include "sgqst/estimators.hpp"
#include "sgqst/lbfgsb.hpp"

namespace sgqst::detail {

struct RestartOutcome {
  LbfgsbResult best;
  int best_index = 0;
  int total_iterations = 0;
  int restarts = 0;
  bool any_unconverged = false;
};

/// Runs `restarts` independent optimizations (concurrently when OpenMP has
/// threads) and keeps the lowest loss; ties within kRestartTieTol go to the
/// lowest restart index, so the outcome is schedule-independent.
inline RestartOutcome best_of_restarts(int restarts, const std::function<LbfgsbResult(int)>& run_one) {
  std::vector<LbfgsbResult> results(static_cast<std::size_t>(restarts));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < restarts; ++r) {
    try {
      results[static_cast<std::size_t>(r)] = run_one(r);
    } catch (...) {
      errors[static_cast<std::size_t>(r)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  RestartOutcome out;
  out.restarts = restarts;
  for (int r = 0; r < restarts; ++r) {
    const auto& res = results[static_cast<std::size_t>(r)];
    out.total_iterations += res.iterations;
    if (!res.converged) out.any_unconverged = true;
    if (r == 0 || res.f < out.best.f - kRestartTieTol) {
      out.best = res;
      out.best_index = r;
    }
  }
  return out;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace sgqst::detail
