#include "sgqst/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sgqst::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json noise_to_json(const NoiseModel& noise) {
  return {{"depolarizing", noise.depolarizing}, {"dephasing", noise.dephasing}, {"readout", noise.readout}};
}

NoiseModel noise_from_json(const json& j) {
  NoiseModel noise;
  noise.depolarizing = j.value("depolarizing", 0.0);
  noise.dephasing = j.value("dephasing", 0.0);
  noise.readout = j.value("readout", 0.0);
  noise.validate();
  return noise;
}

json dataset_to_json(const Dataset& dataset) {
  json records = json::array();
  for (const auto& r : dataset.records) {
    records.push_back({{"pauli", r.pauli.label()}, {"shots", r.shots}, {"estimate", r.estimate}});
  }
  return {{"n", dataset.n},
          {"seed", dataset.seed},
          {"state", dataset.state_tag},
          {"noise", noise_to_json(dataset.noise)},
          {"records", std::move(records)}};
}

Dataset dataset_from_json(const json& j) {
  Dataset d;
  d.n = j.at("n").get<int>();
  d.seed = j.value("seed", std::uint64_t{0});
  d.state_tag = j.value("state", std::string("ghz"));
  if (j.contains("noise")) d.noise = noise_from_json(j.at("noise"));
  for (const auto& r : j.at("records")) {
    d.records.push_back({PauliString::parse(r.at("pauli").get<std::string>(), d.n), r.at("shots").get<std::int64_t>(),
                         r.at("estimate").get<double>()});
  }
  d.validate();
  return d;
}

json result_to_json(const ReconstructionResult& result, const ResultMetrics& metrics) {
  json state = json::array();
  const CMatrix& m = result.state.matrix();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) state.push_back({m(r, c).real(), m(r, c).imag()});
  }
  json ops = json::array();
  for (const auto& p : result.operators) ops.push_back(p.label());
  json out = {{"estimator", result.estimator},
              {"n", result.state.num_qubits()},
              {"operators", std::move(ops)},
              {"params", result.params},
              {"state", std::move(state)},
              {"final_loss", result.final_loss},
              {"iterations", result.iterations},
              {"restarts_used", result.restarts_used},
              {"wall_ms", result.wall_ms},
              {"converged", result.converged},
              {"warnings", result.warnings}};
  json mj = json::object();
  if (metrics.fidelity_target) mj["fidelity_target"] = *metrics.fidelity_target;
  if (metrics.agreement_mle) mj["agreement_mle"] = *metrics.agreement_mle;
  if (metrics.observable_error) mj["observable_error"] = *metrics.observable_error;
  out["metrics"] = std::move(mj);
  return out;
}

ReconstructionResult result_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  const Index dim = dense_dim(n);
  const auto& entries = j.at("state");
  if (static_cast<Index>(entries.size()) != dim * dim) {
    throw std::invalid_argument("result state has " + std::to_string(entries.size()) + " entries, expected " +
                                std::to_string(dim * dim));
  }
  CMatrix m(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      const auto& e = entries.at(static_cast<std::size_t>(r * dim + c));
      m(r, c) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  std::vector<PauliString> ops;
  for (const auto& label : j.value("operators", json::array())) ops.push_back(PauliString::parse(label.get<std::string>(), n));
  return ReconstructionResult{
      .estimator = j.at("estimator").get<std::string>(),
      .state = DensityMatrix(std::move(m)),
      .params = j.value("params", std::vector<double>{}),
      .operators = std::move(ops),
      .final_loss = j.value("final_loss", 0.0),
      .iterations = j.value("iterations", 0),
      .restarts_used = j.value("restarts_used", 0),
      .wall_ms = j.value("wall_ms", 0.0),
      .converged = j.value("converged", true),
      .warnings = j.value("warnings", std::vector<std::string>{}),
  };
}

OperatorSet operator_set_from_json(const json& j, int n) {
  if (!j.is_array()) throw std::invalid_argument("operator set file must be a JSON array of labels");
  std::vector<std::string> labels;
  for (const auto& item : j) labels.push_back(item.get<std::string>());
  return parse_custom(labels, n);
}

std::string residuals_csv(std::span<const ResidualEntry> entries) {
  std::string out = "pauli,delta\n";
  for (const auto& e : entries) out += e.pauli.label() + "," + format_double(e.delta) + "\n";
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::filesystem::path& path) { return json::parse(read_file(path)); }

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace sgqst::io
