#include <doctest.h>

#include <filesystem>

#include "sgqst/io.hpp"
#include "sgqst/operator_sets.hpp"
#include "sgqst/state.hpp"

using namespace sgqst;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sgqst_test_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("format_double") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(-0.013671875) == "-0.013671875");
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("dataset round trip") {
  const NoiseModel noise{.depolarizing = 0.263, .dephasing = 0.01, .readout = 0.02};
  const Dataset d = generate_dataset(ghz(3), full_set(3).span(), 2048, noise, 42);
  const auto j = io::dataset_to_json(d);
  CHECK(j.at("n") == 3);
  CHECK(j.at("seed") == 42);
  CHECK(j.at("state") == "ghz");
  CHECK(j.at("records").size() == 63);
  CHECK(j.at("records")[0].at("pauli") == "IIX");
  CHECK(j.at("noise").at("depolarizing") == 0.263);

  const Dataset back = io::dataset_from_json(io::json::parse(j.dump()));
  CHECK(back.n == d.n);
  CHECK(back.seed == d.seed);
  CHECK(back.noise == d.noise);
  REQUIRE(back.records.size() == d.records.size());
  for (std::size_t k = 0; k < d.records.size(); ++k) {
    CHECK(back.records[k].pauli == d.records[k].pauli);
    CHECK(back.records[k].shots == d.records[k].shots);
    CHECK(back.records[k].estimate == d.records[k].estimate);
  }
}

TEST_CASE("dataset validation on load") {
  auto j = io::dataset_to_json(exact_dataset(ghz(2), full_set(2).span(), 8, {}));
  j["records"][0]["estimate"] = 0.3;
  CHECK_THROWS_AS(io::dataset_from_json(j), std::invalid_argument);

  auto dup = io::dataset_to_json(exact_dataset(ghz(2), full_set(2).span(), 8, {}));
  dup["records"][1]["pauli"] = dup["records"][0]["pauli"];
  CHECK_THROWS_AS(io::dataset_from_json(dup), std::invalid_argument);

  auto bad = io::dataset_to_json(exact_dataset(ghz(2), full_set(2).span(), 8, {}));
  bad["records"][0]["pauli"] = "XYZ";
  CHECK_THROWS_AS(io::dataset_from_json(bad), std::invalid_argument);
}

TEST_CASE("result round trip") {
  ReconstructionResult r{.estimator = "PSD", .state = ghz(2)};
  r.params = {0.25, -1.0 / 3.0};
  r.operators = {PauliString::parse("XX")};
  r.final_loss = 1e-17;
  r.warnings = {"note"};
  const auto j = io::result_to_json(r, {.fidelity_target = 0.5});
  CHECK(j.at("state").size() == 16);
  CHECK(j.at("state")[0][0] == 0.5);
  CHECK(j.at("state")[3][0] == 0.5);
  CHECK(j.at("metrics").at("fidelity_target") == 0.5);
  CHECK_FALSE(j.at("metrics").contains("agreement_mle"));

  const auto back = io::result_from_json(io::json::parse(j.dump()));
  CHECK(back.estimator == "PSD");
  CHECK(back.params == r.params);
  CHECK(back.operators == r.operators);
  CHECK(back.final_loss == r.final_loss);
  CHECK(back.warnings == r.warnings);
  CHECK((back.state.matrix() - r.state.matrix()).cwiseAbs().maxCoeff() == 0.0);

  auto truncated = j;
  truncated["state"].erase(0);
  CHECK_THROWS_AS(io::result_from_json(truncated), std::invalid_argument);
}

TEST_CASE("custom operator files") {
  const auto set = io::operator_set_from_json(io::json::parse(R"(["XXX","YYY","ZIZ"])"), 3);
  CHECK(set.size() == 3);
  CHECK(set[2].label() == "ZIZ");
  CHECK_THROWS_AS(io::operator_set_from_json(io::json::parse(R"({"a":1})"), 3), std::invalid_argument);
  CHECK_THROWS_AS(io::operator_set_from_json(io::json::parse(R"(["XX"])"), 3), std::invalid_argument);
}

TEST_CASE("residual csv") {
  const std::vector<ResidualEntry> rows = {{PauliString::parse("ZIZ"), 0.1}, {PauliString::parse("YXY"), -0.25}};
  CHECK(io::residuals_csv(rows) == "pauli,delta\nZIZ,0.10000000000000001\nYXY,-0.25\n");
}

TEST_CASE("atomic writes") {
  const fs::path p = scratch("nested/out.txt");
  fs::remove_all(p.parent_path());
  io::write_file_atomic(p, "first");
  CHECK(io::read_file(p) == "first");
  io::write_file_atomic(p, "second");
  CHECK(io::read_file(p) == "second");
  fs::path tmp = p;
  tmp += ".tmp";
  CHECK_FALSE(fs::exists(tmp));
  CHECK_THROWS(io::read_file(scratch("missing.txt")));
}
