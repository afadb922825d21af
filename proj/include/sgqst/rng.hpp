#pragma once

#include <cstdint>
#include <limits>

namespace sgqst {

/// SplitMix64 output finalizer (Stafford "Mix13").
std::uint64_t mix64(std::uint64_t z);

/// Counter-based SplitMix64 stream.
///
/// Draw k (k = 1, 2, ...) of the stream keyed by `key` is
///   mix64(key + k * 0x9E3779B97F4A7C15)
/// which is exactly the classic SplitMix64 sequence seeded with `key`.
/// Streams are keyed, never shared: every consumer derives its own key with
/// derive_stream(), so results do not depend on scheduling.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in [0, 1) from the top 53 bits of one draw.
  double uniform();
  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller (two draws per value, no caching).
  double normal();

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Sub-stream key for (seed, index): mix64(mix64(seed) ^ mix64(index + 0x9E3779B97F4A7C15)).
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index);

/// Exact Binomial(trials, p) draw.
///
/// Up to kBernoulliTrialLimit trials this counts uniform() < p over `trials`
/// draws. Larger counts use inversion over the pmf ordered outward from the
/// mode (mode, mode+1, mode-1, mode+2, ...), consuming one draw.
std::int64_t sample_binomial(CounterRng& rng, std::int64_t trials, double p);

inline constexpr std::int64_t kBernoulliTrialLimit = 1 << 16;

}  // namespace sgqst
