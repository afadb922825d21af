#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sgqst/density_matrix.hpp"
#include "sgqst/rng.hpp"
#include "sgqst/state.hpp"

namespace sgqst {

/// Channel parameters applied before sampling.
///
/// The state channel is rho' = (1 - p_dep) Phi_z(rho) + p_dep I/2^n, where
/// Phi_z applies an independent phase flip with probability p_z to every
/// qubit. Readout error flips each measured bit with probability readout_eps
/// and is folded into the expectation analytically.
struct NoiseModel {
  double depolarizing = 0.0;
  double dephasing = 0.0;
  double readout = 0.0;

  /// Throws std::invalid_argument when a field is outside its range.
  void validate() const;
  bool operator==(const NoiseModel&) const = default;
};

struct MeasurementRecord {
  PauliString pauli;
  std::int64_t shots = 0;
  double estimate = 0.0;

  /// N (1 + estimate) / 2, the number of +1 outcomes.
  std::int64_t plus_count() const;
  /// Whether the estimate is realizable from `shots` binary outcomes.
  bool realizable(double tol = 1e-9) const;
};

struct Dataset {
  int n = 0;
  std::vector<MeasurementRecord> records;
  std::uint64_t seed = 0;
  NoiseModel noise;
  std::string state_tag = "ghz";

  const MeasurementRecord* find(const PauliString& p) const;
  /// Estimates keyed by label.
  ExpectationMap estimates() const;
  /// Operators from `wanted` with no record, in the order given.
  std::vector<PauliString> missing(std::span<const PauliString> wanted) const;
  /// Checks distinct labels, lengths, and the realizability invariant.
  void validate() const;
};

DensityMatrix apply_noise(const DensityMatrix& rho, const NoiseModel& noise);

/// The expectation a noiseless parity readout would converge to:
/// (1 - 2 eps)^weight(p) Tr(rho P).
double readout_scaled_expectation(const DensityMatrix& rho, const PauliString& p, double readout_eps);

/// One binomial estimate of Tr(rho P) from `shots` repetitions.
/// Throws std::invalid_argument for the identity or a non-positive shot count.
MeasurementRecord sample_expectation(const DensityMatrix& rho, const PauliString& p, std::int64_t shots,
                                     CounterRng& rng, double readout_eps = 0.0);

/// Applies `noise` to `state` and samples every operator with the sub-stream
/// derive_stream(seed, operator index). Output does not depend on thread count.
Dataset generate_dataset(const DensityMatrix& state, std::span<const PauliString> operators,
                         std::int64_t shots, const NoiseModel& noise, std::uint64_t seed,
                         std::string state_tag = "ghz");

/// Shot-free dataset: every estimate is the realizable value nearest to the
/// noisy expectation (exact whenever the expectation is a multiple of 2/shots,
/// e.g. the 0 / +-1 values of a noiseless GHZ state with even shots).
Dataset exact_dataset(const DensityMatrix& state, std::span<const PauliString> operators,
                      std::int64_t shots, const NoiseModel& noise, std::string state_tag = "ghz");

}  // namespace sgqst
