#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sgqst/bench.hpp"
#include "sgqst/estimators.hpp"
#include "sgqst/io.hpp"
#include "sgqst/measurement.hpp"
#include "sgqst/metrics.hpp"
#include "sgqst/operator_sets.hpp"
#include "sgqst/state.hpp"

namespace {

using namespace sgqst;
using io::json;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
};

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

// "full", "g1".."g4" or a path to a JSON array of labels
OperatorSet resolve_set(const std::string& spec, int n) {
  const std::string tag = upper(spec);
  if (tag == "FULL" || tag == "G1" || tag == "G2" || tag == "G3" || tag == "G4") {
    return operator_set(parse_set_tag(tag), n);
  }
  return io::operator_set_from_json(io::read_json(spec), n);
}

DensityMatrix named_state(const std::string& name, int n) {
  if (name == "ghz") return ghz(n);
  if (name == "mixed") return maximally_mixed(n);
  throw std::invalid_argument("unknown state '" + name + "' (expected ghz or mixed)");
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
  } else {
    io::write_file_atomic(g.out, text);
  }
}

OptimizerConfig optimizer_from(const Globals& g) {
  OptimizerConfig opt;
  if (!g.config.empty()) opt = bench_config_from_json(io::read_json(g.config)).optimizer;
  opt.seed = g.seed;
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured Gibbs tomography toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--out", g.out, "output file (or directory for benchmark)");
  app.add_option("--config", g.config, "JSON config file")->check(CLI::ExistingFile);

  // simulate
  auto* sim = app.add_subcommand("simulate", "sample a Pauli dataset from a noisy state");
  int sim_n = 0;
  std::string sim_state = "ghz", sim_set = "full";
  std::int64_t sim_shots = 2048;
  NoiseModel sim_noise;
  bool sim_exact = false;
  sim->add_option("--n", sim_n, "number of qubits")->required();
  sim->add_option("--state", sim_state, "ghz or mixed");
  sim->add_option("--set", sim_set, "full, g1..g4, or a JSON label file");
  sim->add_option("--shots", sim_shots, "shots per operator");
  sim->add_option("--depolarizing", sim_noise.depolarizing);
  sim->add_option("--dephasing", sim_noise.dephasing);
  sim->add_option("--readout", sim_noise.readout);
  sim->add_flag("--exact", sim_exact, "write the nearest realizable expectations instead of sampling");

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "fit an estimator to a dataset");
  std::string rec_data, rec_estimator, rec_set, rec_target, rec_mle;
  std::optional<int> rec_restarts;
  rec->add_option("--data", rec_data, "dataset JSON")->required()->check(CLI::ExistingFile);
  rec->add_option("--estimator", rec_estimator, "MLE, PSD, G1..G4 or CUSTOM")->required();
  rec->add_option("--set", rec_set, "label file for CUSTOM");
  rec->add_option("--target", rec_target, "named target state for the fidelity metric (ghz)");
  rec->add_option("--mle", rec_mle, "MLE result JSON for agreement metrics");
  rec->add_option("--restarts", rec_restarts);

  // evaluate
  auto* eva = app.add_subcommand("evaluate", "metrics of a stored result");
  std::string eva_result, eva_target = "ghz", eva_mle, eva_probe = "full";
  eva->add_option("--result", eva_result)->required()->check(CLI::ExistingFile);
  eva->add_option("--target", eva_target);
  eva->add_option("--mle", eva_mle);
  eva->add_option("--probe", eva_probe, "probe set for the observable error");

  // residuals
  auto* res = app.add_subcommand("residuals", "top-k residuals between a reference and a model");
  std::string res_ref, res_model, res_probe = "full";
  std::size_t res_k = 5;
  res->add_option("--reference", res_ref)->required()->check(CLI::ExistingFile);
  res->add_option("--model", res_model)->required()->check(CLI::ExistingFile);
  res->add_option("--k", res_k)->check(CLI::PositiveNumber);
  res->add_option("--probe", res_probe);

  // benchmark
  auto* ben = app.add_subcommand("benchmark", "run the estimator grid");
  bool ben_verbose = false;
  ben->add_flag("--verbose", ben_verbose);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      const OperatorSet ops = resolve_set(sim_set, sim_n);
      const DensityMatrix state = named_state(sim_state, sim_n);
      sim_noise.validate();
      const Dataset d = sim_exact ? exact_dataset(state, ops.span(), sim_shots, sim_noise, sim_state)
                                  : generate_dataset(state, ops.span(), sim_shots, sim_noise, g.seed, sim_state);
      emit(g, io::dataset_to_json(d).dump(2) + "\n");
    } else if (*rec) {
      const Dataset d = io::dataset_from_json(io::read_json(rec_data));
      OptimizerConfig opt = optimizer_from(g);
      if (rec_restarts) opt.restarts = *rec_restarts;
      const std::string tag = upper(rec_estimator);
      std::optional<ReconstructionResult> fit;
      if (tag == "MLE") {
        fit = mle_fit(d, opt);
      } else if (tag == "PSD") {
        fit = psd_estimate(d);
      } else if (tag == "CUSTOM") {
        if (rec_set.empty()) throw std::invalid_argument("CUSTOM requires --set <labels.json>");
        fit = fit_gibbs(io::operator_set_from_json(io::read_json(rec_set), d.n), d, opt);
      } else {
        fit = fit_gibbs(operator_set(parse_set_tag(tag), d.n), d, opt);
      }
      io::ResultMetrics m;
      if (!rec_target.empty()) m.fidelity_target = target_fidelity(fit->state, named_state(rec_target, d.n));
      if (!rec_mle.empty()) {
        const ReconstructionResult ref = io::result_from_json(io::read_json(rec_mle));
        const OperatorSet probe = full_set(d.n);
        m.agreement_mle = mle_agreement(fit->state, ref.state);
        m.observable_error = observable_error(ref.state, fit->state, probe.span());
      }
      for (const auto& w : fit->warnings) std::clog << "warning: " << w << "\n";
      emit(g, io::result_to_json(*fit, m).dump(2) + "\n");
    } else if (*eva) {
      const ReconstructionResult r = io::result_from_json(io::read_json(eva_result));
      const int n = r.state.num_qubits();
      json out = {{"estimator", r.estimator}, {"n", n}, {"params", r.params.size()}};
      out["fidelity_target"] = target_fidelity(r.state, named_state(eva_target, n));
      if (!eva_mle.empty()) {
        const ReconstructionResult ref = io::result_from_json(io::read_json(eva_mle));
        if (ref.state.num_qubits() != n) throw std::invalid_argument("result and MLE reference differ in n");
        const OperatorSet probe = resolve_set(eva_probe, n);
        out["agreement_mle"] = mle_agreement(r.state, ref.state);
        out["observable_error"] = observable_error(ref.state, r.state, probe.span());
      }
      emit(g, out.dump(2) + "\n");
    } else if (*res) {
      const ReconstructionResult ref = io::result_from_json(io::read_json(res_ref));
      const ReconstructionResult model = io::result_from_json(io::read_json(res_model));
      const int n = ref.state.num_qubits();
      if (model.state.num_qubits() != n) {
        throw std::invalid_argument("reference has n=" + std::to_string(n) + " but model has n=" +
                                    std::to_string(model.state.num_qubits()));
      }
      const OperatorSet probe = resolve_set(res_probe, n);
      const auto entries = residuals(ref.state, model.state, probe.span());
      emit(g, io::residuals_csv(top_k_residuals(entries, res_k)));
    } else if (*ben) {
      BenchConfig cfg = g.config.empty() ? BenchConfig{} : bench_config_from_json(io::read_json(g.config));
      if (app.count("--seed") > 0) cfg.master_seed = g.seed;
      if (!g.out.empty()) cfg.output_dir = g.out;
      if (cfg.output_dir.empty()) cfg.output_dir = "results";
      cfg.verbose = cfg.verbose || ben_verbose;
      const BenchReport report = run_benchmark(cfg);
      std::size_t failed = 0;
      for (const auto& row : report.rows) failed += row.status.rfind("error", 0) == 0 ? 1 : 0;
      std::clog << "benchmark: " << report.rows.size() << " rows (" << failed << " failed) -> "
                << std::filesystem::path(cfg.output_dir) / "results.csv" << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
