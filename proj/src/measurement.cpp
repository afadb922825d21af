#include "sgqst/measurement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "sgqst/kernels.hpp"

namespace sgqst {

namespace {

void check_unit(double v, double hi, const char* name) {
  if (!(v >= 0.0 && v <= hi)) {
    throw std::invalid_argument(std::string("noise parameter ") + name + " = " + std::to_string(v) +
                                " outside [0, " + std::to_string(hi) + "]");
  }
}

void check_operators(std::span<const PauliString> operators, int n) {
  if (operators.empty()) throw std::invalid_argument("operator list is empty");
  std::set<PauliString> seen;
  for (const auto& p : operators) {
    if (p.num_qubits() != n) {
      throw std::invalid_argument("operator '" + p.label() + "' does not act on " + std::to_string(n) +
                                  " qubits");
    }
    if (p.is_identity()) throw std::invalid_argument("identity operator cannot be sampled");
    if (!seen.insert(p).second) throw std::invalid_argument("duplicate operator '" + p.label() + "'");
  }
}

double estimate_from_count(std::int64_t plus, std::int64_t shots) {
  return static_cast<double>(2 * plus - shots) / static_cast<double>(shots);
}

}  // namespace

void NoiseModel::validate() const {
  check_unit(depolarizing, 1.0, "depolarizing");
  check_unit(dephasing, 1.0, "dephasing");
  check_unit(readout, 0.5, "readout");
}

std::int64_t MeasurementRecord::plus_count() const {
  return std::llround(0.5 * static_cast<double>(shots) * (1.0 + estimate));
}

bool MeasurementRecord::realizable(double tol) const {
  if (shots <= 0 || estimate < -1.0 || estimate > 1.0) return false;
  const double plus = 0.5 * static_cast<double>(shots) * (1.0 + estimate);
  return std::abs(plus - std::round(plus)) <= tol * std::max(1.0, static_cast<double>(shots));
}

const MeasurementRecord* Dataset::find(const PauliString& p) const {
  for (const auto& r : records) {
    if (r.pauli == p) return &r;
  }
  return nullptr;
}

ExpectationMap Dataset::estimates() const {
  ExpectationMap out;
  for (const auto& r : records) out.emplace(r.pauli, r.estimate);
  return out;
}

std::vector<PauliString> Dataset::missing(std::span<const PauliString> wanted) const {
  std::set<PauliString> have;
  for (const auto& r : records) have.insert(r.pauli);
  std::vector<PauliString> out;
  for (const auto& p : wanted) {
    if (!have.contains(p)) out.push_back(p);
  }
  return out;
}

void Dataset::validate() const {
  noise.validate();
  std::vector<PauliString> ops;
  ops.reserve(records.size());
  for (const auto& r : records) {
    ops.push_back(r.pauli);
    if (!r.realizable()) {
      throw std::invalid_argument("record '" + r.pauli.label() + "' estimate " +
                                  std::to_string(r.estimate) + " is not realizable from " +
                                  std::to_string(r.shots) + " shots");
    }
  }
  check_operators(ops, n);
}

DensityMatrix apply_noise(const DensityMatrix& rho, const NoiseModel& noise) {
  noise.validate();
  const Index dim = rho.dim();
  CMatrix out = rho.matrix();
  if (noise.dephasing > 0.0) {
    // each qubit whose bit differs between row and column damps the entry by (1 - 2 p_z)
    const double damp = 1.0 - 2.0 * noise.dephasing;
    for (Index c = 0; c < dim; ++c) {
      for (Index r = 0; r < dim; ++r) {
        const int flips = std::popcount(static_cast<std::uint64_t>(r ^ c));
        if (flips > 0) out(r, c) *= std::pow(damp, flips);
      }
    }
  }
  if (noise.depolarizing > 0.0) {
    out *= 1.0 - noise.depolarizing;
    out.diagonal().array() += noise.depolarizing / static_cast<double>(dim);
  }
  return DensityMatrix(std::move(out));
}

double readout_scaled_expectation(const DensityMatrix& rho, const PauliString& p, double readout_eps) {
  const double ideal = expectation(rho.matrix(), p);
  return std::pow(1.0 - 2.0 * readout_eps, p.weight()) * ideal;
}

MeasurementRecord sample_expectation(const DensityMatrix& rho, const PauliString& p, std::int64_t shots,
                                     CounterRng& rng, double readout_eps) {
  if (shots < 1) throw std::invalid_argument("shot count must be positive");
  if (p.is_identity()) throw std::invalid_argument("identity expectation is fixed at 1 and is not sampled");
  if (!(readout_eps >= 0.0 && readout_eps <= 0.5)) throw std::invalid_argument("readout error outside [0, 0.5]");
  const double m = readout_scaled_expectation(rho, p, readout_eps);
  const double plus_probability = std::clamp(0.5 * (1.0 + m), 0.0, 1.0);
  const std::int64_t plus = sample_binomial(rng, shots, plus_probability);
  return {p, shots, estimate_from_count(plus, shots)};
}

Dataset generate_dataset(const DensityMatrix& state, std::span<const PauliString> operators,
                         std::int64_t shots, const NoiseModel& noise, std::uint64_t seed,
                         std::string state_tag) {
  if (shots < 1) throw std::invalid_argument("shot count must be positive");
  check_operators(operators, state.num_qubits());
  const DensityMatrix noisy = apply_noise(state, noise);

  // expectations first (validated serially), then the independent draws
  std::vector<double> scaled = kernels::expectations(noisy.matrix(), operators);
  for (std::size_t k = 0; k < operators.size(); ++k) {
    scaled[k] *= std::pow(1.0 - 2.0 * noise.readout, operators[k].weight());
  }

  Dataset out;
  out.n = state.num_qubits();
  out.seed = seed;
  out.noise = noise;
  out.state_tag = std::move(state_tag);
  out.records.resize(operators.size(), MeasurementRecord{operators.front(), shots, 0.0});

  const auto count = static_cast<std::int64_t>(operators.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    CounterRng rng(derive_stream(seed, static_cast<std::uint64_t>(k)));
    const double plus_probability = std::clamp(0.5 * (1.0 + scaled[idx]), 0.0, 1.0);
    const std::int64_t plus = sample_binomial(rng, shots, plus_probability);
    out.records[idx] = MeasurementRecord{operators[idx], shots, estimate_from_count(plus, shots)};
  }
  return out;
}

Dataset exact_dataset(const DensityMatrix& state, std::span<const PauliString> operators,
                      std::int64_t shots, const NoiseModel& noise, std::string state_tag) {
  if (shots < 1) throw std::invalid_argument("shot count must be positive");
  check_operators(operators, state.num_qubits());
  const DensityMatrix noisy = apply_noise(state, noise);
  Dataset out;
  out.n = state.num_qubits();
  out.noise = noise;
  out.state_tag = std::move(state_tag);
  for (const auto& p : operators) {
    const double m = readout_scaled_expectation(noisy, p, noise.readout);
    const auto plus = std::llround(0.5 * static_cast<double>(shots) * (1.0 + std::clamp(m, -1.0, 1.0)));
    out.records.push_back({p, shots, estimate_from_count(plus, shots)});
  }
  return out;
}

}  // namespace sgqst
