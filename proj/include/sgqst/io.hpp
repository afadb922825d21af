#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgqst/estimators.hpp"
#include "sgqst/measurement.hpp"
#include "sgqst/metrics.hpp"
#include "sgqst/operator_sets.hpp"

namespace sgqst::io {

using nlohmann::json;

/// 17 significant digits ("%.17g"), the CSV float format.
std::string format_double(double v);

json noise_to_json(const NoiseModel& noise);
NoiseModel noise_from_json(const json& j);

/// {"n", "seed", "state", "noise", "records": [{"pauli", "shots", "estimate"}]}
json dataset_to_json(const Dataset& dataset);
/// Parses and validates (labels, realizability, distinctness).
Dataset dataset_from_json(const json& j);

struct ResultMetrics {
  std::optional<double> fidelity_target;
  std::optional<double> agreement_mle;
  std::optional<double> observable_error;
};

/// Result document; the state is a row-major list of [re, im] pairs.
json result_to_json(const ReconstructionResult& result, const ResultMetrics& metrics = {});
ReconstructionResult result_from_json(const json& j);

/// A JSON array of label strings.
OperatorSet operator_set_from_json(const json& j, int n);

/// "pauli,delta" header plus one row per entry, in the given order.
std::string residuals_csv(std::span<const ResidualEntry> entries);

std::string read_file(const std::filesystem::path& path);
json read_json(const std::filesystem::path& path);
/// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace sgqst::io
