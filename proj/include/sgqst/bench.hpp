#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgqst/estimators.hpp"
#include "sgqst/measurement.hpp"
#include "sgqst/metrics.hpp"

namespace sgqst {

/// Depolarizing strengths that put the simulated MLE fidelity near the
/// reference levels for n = 3, 4, 5: p = (1 - F) / (1 - 2^-n).
std::map<int, double> calibrated_depolarizing();

struct BenchConfig {
  std::vector<int> qubit_counts{3, 4, 5};
  std::vector<std::int64_t> shot_counts{256, 1024, 2048};
  std::vector<std::string> estimators{"MLE", "PSD", "G1", "G2", "G3", "G4"};
  NoiseModel noise;                                       // dephasing / readout, and depolarizing fallback
  std::map<int, double> depolarizing_by_n = calibrated_depolarizing();
  std::uint64_t master_seed = 20240901;
  OptimizerConfig optimizer;
  std::string output_dir;                                 // empty: no files written
  bool emit_csv = true;
  bool emit_json = true;
  bool record_timing = true;                              // false writes wall_ms = 0 (byte-stable CSV)
  bool exact_expectations = false;                        // skip shot noise (realizable values nearest the truth)
  std::size_t residual_k = 5;
  bool verbose = false;

  void validate() const;
  NoiseModel noise_for(int n) const;
};

/// Reads a config document. Unknown keys are rejected. A "noise" object with
/// an explicit "depolarizing" and no "depolarizing_by_n" disables the per-n calibration.
BenchConfig bench_config_from_json(const nlohmann::json& j);
nlohmann::json bench_config_to_json(const BenchConfig& config);

struct ResultRow {
  int n = 0;
  std::int64_t shots = 0;
  std::string estimator;
  std::size_t params_count = 0;
  double target_fidelity = 0.0;
  double mle_agreement = 0.0;
  double observable_error = 0.0;
  double final_loss = 0.0;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;  // dataset seed of the cell
  std::string status = "ok";
};

struct ResidualTable {
  int n = 0;
  std::int64_t shots = 0;
  std::string estimator;
  std::vector<ResidualEntry> top;
};

struct BenchReport {
  std::vector<ResultRow> rows;
  std::vector<ResidualTable> residuals;
};

/// Seed of the (n, shots) cell: derive_stream(derive_stream(master, n), shots).
std::uint64_t cell_seed(std::uint64_t master_seed, int n, std::int64_t shots);

/// Runs the whole grid. Each cell simulates one full-set dataset of the
/// noisy GHZ state, fits the MLE reference first, then every requested
/// estimator on that same dataset. Writes results.csv, results.json,
/// scaling.csv and per-cell residual CSVs when output_dir is set.
BenchReport run_benchmark(const BenchConfig& config);

/// Columns: n,shots,estimator,params,fidelity_target,agreement_mle,observable_error,loss,wall_ms,status
std::string results_csv(const std::vector<ResultRow>& rows);
/// Columns: n,shots,estimator,params,fidelity_target
std::string scaling_csv(const std::vector<ResultRow>& rows);
nlohmann::json results_json(const BenchReport& report, const BenchConfig& config);

}  // namespace sgqst
