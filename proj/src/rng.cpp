#include "sgqst/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sgqst {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterRng::result_type CounterRng::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * kGamma);
}

double CounterRng::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
  double u1 = uniform();
  const double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ mix64(index + kGamma));
}

std::int64_t sample_binomial(CounterRng& rng, std::int64_t trials, double p) {
  if (trials < 0) throw std::invalid_argument("sample_binomial: negative trial count");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_binomial: p outside [0, 1]");
  if (trials == 0 || p == 0.0) return 0;
  if (p == 1.0) return trials;

  if (trials <= kBernoulliTrialLimit) {
    std::int64_t hits = 0;
    for (std::int64_t t = 0; t < trials; ++t) hits += rng.uniform() < p ? 1 : 0;
    return hits;
  }

  const double n = static_cast<double>(trials);
  const double q = 1.0 - p;
  const auto mode = std::min(trials, static_cast<std::int64_t>(std::floor((n + 1.0) * p)));
  const double m = static_cast<double>(mode);
  const double log_mode = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0) +
                          m * std::log(p) + (n - m) * std::log(q);
  const double u = rng.uniform();

  double cumulative = std::exp(log_mode);
  if (u < cumulative) return mode;
  std::int64_t up = mode;
  std::int64_t down = mode;
  double pmf_up = cumulative;
  double pmf_down = cumulative;
  const double ratio = p / q;
  while (up < trials || down > 0) {
    if (up < trials) {
      pmf_up *= ratio * static_cast<double>(trials - up) / static_cast<double>(up + 1);
      ++up;
      cumulative += pmf_up;
      if (u < cumulative) return up;
    }
    if (down > 0) {
      pmf_down *= static_cast<double>(down) / (ratio * static_cast<double>(trials - down + 1));
      --down;
      cumulative += pmf_down;
      if (u < cumulative) return down;
    }
  }
  // only reachable through pmf rounding loss in the far tails
  return mode;
}

}  // namespace sgqst
