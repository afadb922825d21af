#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "sgqst/bench.hpp"
#include "sgqst/io.hpp"

using namespace sgqst;
namespace fs = std::filesystem;

namespace {

BenchConfig small_config() {
  BenchConfig c;
  c.qubit_counts = {2, 3};
  c.shot_counts = {256};
  c.optimizer.restarts = 2;
  c.record_timing = false;
  return c;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("calibrated noise") {
  const auto cal = calibrated_depolarizing();
  CHECK(cal.at(3) == 0.263);
  BenchConfig c;
  CHECK(c.noise_for(3).depolarizing == 0.263);
  CHECK(c.noise_for(7).depolarizing == 0.0);
  // p = 0.263 lands the n = 3 fidelity at (1 - p) + p / 8
  CHECK(std::abs((1 - cal.at(3)) + cal.at(3) / 8 - 0.770) < 0.001);
}

TEST_CASE("config parsing") {
  const auto c = bench_config_from_json(io::json::parse(
      R"({"qubit_counts":[3],"shot_counts":[64,128],"estimators":["mle","g3"],"restarts":2,"seed":5,"emit":["csv"]})"));
  CHECK(c.qubit_counts == std::vector<int>{3});
  CHECK(c.shot_counts.size() == 2);
  CHECK(c.estimators == std::vector<std::string>{"MLE", "G3"});
  CHECK(c.optimizer.restarts == 2);
  CHECK(c.master_seed == 5);
  CHECK(c.emit_csv);
  CHECK_FALSE(c.emit_json);
  CHECK_FALSE(c.depolarizing_by_n.empty());

  const auto flat = bench_config_from_json(io::json::parse(R"({"noise":{"depolarizing":0.2}})"));
  CHECK(flat.depolarizing_by_n.empty());
  CHECK(flat.noise_for(5).depolarizing == 0.2);

  CHECK_THROWS_AS(bench_config_from_json(io::json::parse(R"({"qubits":[3]})")), std::invalid_argument);
  CHECK_THROWS_AS(bench_config_from_json(io::json::parse(R"({"estimators":["G9"]})")), std::invalid_argument);
  CHECK_THROWS_AS(bench_config_from_json(io::json::parse(R"({"shot_counts":[]})")), std::invalid_argument);

  const auto round = bench_config_from_json(bench_config_to_json(c));
  CHECK(round.shot_counts == c.shot_counts);
  CHECK(round.estimators == c.estimators);
  CHECK(round.master_seed == c.master_seed);
}

TEST_CASE("cell seeds") {
  CHECK(cell_seed(1, 3, 256) == cell_seed(1, 3, 256));
  CHECK(cell_seed(1, 3, 256) != cell_seed(1, 3, 1024));
  CHECK(cell_seed(1, 3, 256) != cell_seed(1, 4, 256));
  CHECK(cell_seed(1, 3, 256) != cell_seed(2, 3, 256));
}

TEST_CASE("small grid") {
  const fs::path dir = fs::temp_directory_path() / "sgqst_test_bench";
  fs::remove_all(dir);
  BenchConfig c = small_config();
  c.output_dir = dir.string();
  const auto report = run_benchmark(c);

  // n = 2 drops G3 and G4
  REQUIRE(report.rows.size() == 4 + 6);
  for (const auto& r : report.rows) {
    CHECK_MESSAGE((r.status == "ok" || r.status == "not_converged"), r.estimator, " ", r.status);
    if (r.estimator == "MLE" || r.estimator == "PSD") CHECK(r.params_count == (std::size_t{1} << (2 * r.n)) - 1);
    if (r.estimator == "G1") CHECK(r.params_count == 3 * static_cast<std::size_t>(r.n));
    if (r.estimator == "G2") CHECK(r.params_count == 6 * static_cast<std::size_t>(r.n) - 3);
    if (r.estimator == "G3") CHECK(r.params_count == 6 * static_cast<std::size_t>(r.n) - 1);
    if (r.estimator == "MLE") CHECK(r.mle_agreement == doctest::Approx(1.0));
    CHECK(r.wall_ms == 0.0);
  }
  CHECK(report.rows.front().estimator == "MLE");
  CHECK(report.residuals.size() == 2 + 4);

  const std::string csv = io::read_file(dir / "results.csv");
  const auto rows = lines(csv);
  CHECK(rows.front() == "n,shots,estimator,params,fidelity_target,agreement_mle,observable_error,loss,wall_ms,status");
  CHECK(rows.size() == 11);
  CHECK(fs::exists(dir / "results.json"));
  CHECK(lines(io::read_file(dir / "scaling.csv")).front() == "n,shots,estimator,params,fidelity_target");
  const auto resid = lines(io::read_file(dir / "residuals_n3_shots256_G3.csv"));
  CHECK(resid.front() == "pauli,delta");
  CHECK(resid.size() == 1 + 5);

  const auto j = io::read_json(dir / "results.json");
  CHECK(j.at("rows").size() == 10);
  CHECK(j.at("g3_vs_mle").size() == 1);

  // same config, same bytes
  run_benchmark(c);
  CHECK(io::read_file(dir / "results.csv") == csv);
}

TEST_CASE("unconverged fits are flagged per row") {
  BenchConfig c = small_config();
  c.qubit_counts = {3};
  c.estimators = {"MLE", "G3"};
  c.optimizer.max_iters = 1;
  const auto report = run_benchmark(c);
  REQUIRE(report.rows.size() == 2);
  for (const auto& r : report.rows) CHECK(r.status == "not_converged");
}

TEST_CASE("csv formatting") {
  ResultRow r;
  r.n = 3;
  r.shots = 256;
  r.estimator = "G3";
  r.params_count = 17;
  r.target_fidelity = 0.1;
  r.mle_agreement = 1.0;
  r.observable_error = 0.0;
  r.final_loss = 2.5e-10;
  r.wall_ms = 0.0;
  const auto out = lines(results_csv({r}));
  CHECK(out[1] == "3,256,G3,17,0.10000000000000001,1,0,2.5000000000000002e-10,0,ok");
}
