#include "sgqst/operator_sets.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace sgqst {

namespace {

constexpr Pauli kAxes[] = {Pauli::X, Pauli::Y, Pauli::Z};

PauliString single(int n, int site, Pauli p) {
  std::vector<Pauli> s(static_cast<std::size_t>(n), Pauli::I);
  s[static_cast<std::size_t>(site)] = p;
  return PauliString(s);
}

PauliString pair(int n, int i, int j, Pauli p) {
  std::vector<Pauli> s(static_cast<std::size_t>(n), Pauli::I);
  s[static_cast<std::size_t>(i)] = p;
  s[static_cast<std::size_t>(j)] = p;
  return PauliString(s);
}

PauliString global(int n, Pauli p) {
  return PauliString(std::vector<Pauli>(static_cast<std::size_t>(n), p));
}

void require_min(int n, int lo, const char* name) {
  if (n < lo) {
    throw std::invalid_argument(std::string(name) + " requires at least " + std::to_string(lo) +
                                " qubits, got " + std::to_string(n));
  }
}

std::vector<PauliString> local_ops(int n) {
  std::vector<PauliString> ops;
  for (int i = 0; i < n; ++i) {
    for (Pauli a : kAxes) ops.push_back(single(n, i, a));
  }
  return ops;
}

std::vector<PauliString> chain_ops(int n) {
  auto ops = local_ops(n);
  for (int i = 0; i + 1 < n; ++i) {
    for (Pauli a : kAxes) ops.push_back(pair(n, i, i + 1, a));
  }
  return ops;
}

std::vector<PauliString> global_ops(int n) {
  auto ops = chain_ops(n);
  ops.push_back(global(n, Pauli::X));
  ops.push_back(global(n, Pauli::Y));
  return ops;
}

}  // namespace

std::string to_string(SetTag tag) {
  switch (tag) {
    case SetTag::G1: return "G1";
    case SetTag::G2: return "G2";
    case SetTag::G3: return "G3";
    case SetTag::G4: return "G4";
    case SetTag::Full: return "FULL";
    case SetTag::Custom: return "CUSTOM";
  }
  return "?";
}

SetTag parse_set_tag(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::toupper(c); });
  if (t == "G1") return SetTag::G1;
  if (t == "G2") return SetTag::G2;
  if (t == "G3") return SetTag::G3;
  if (t == "G4") return SetTag::G4;
  if (t == "FULL") return SetTag::Full;
  if (t == "CUSTOM") return SetTag::Custom;
  throw std::invalid_argument("unknown operator set '" + std::string(text) + "'");
}

OperatorSet::OperatorSet(int n, SetTag tag, std::vector<PauliString> operators)
    : n_(n), tag_(tag), ops_(std::move(operators)) {
  std::set<PauliString> seen;
  for (const auto& p : ops_) {
    if (p.num_qubits() != n_) {
      throw std::invalid_argument("operator '" + p.label() + "' has length " +
                                  std::to_string(p.num_qubits()) + ", expected " + std::to_string(n_));
    }
    if (p.is_identity()) throw std::invalid_argument("identity operator '" + p.label() + "' not allowed");
    if (!seen.insert(p).second) throw std::invalid_argument("duplicate operator '" + p.label() + "'");
  }
}

bool OperatorSet::contains(const PauliString& p) const {
  return std::find(ops_.begin(), ops_.end(), p) != ops_.end();
}

std::vector<std::string> OperatorSet::labels() const {
  std::vector<std::string> out;
  out.reserve(ops_.size());
  for (const auto& p : ops_) out.push_back(p.label());
  return out;
}

OperatorSet g1(int n) { return OperatorSet(n, SetTag::G1, local_ops(n)); }

OperatorSet g2(int n) {
  require_min(n, 2, "G2");
  return OperatorSet(n, SetTag::G2, chain_ops(n));
}

OperatorSet g3(int n) {
  // at n = 2 the global strings coincide with the nearest-neighbour pairs
  require_min(n, 3, "G3");
  return OperatorSet(n, SetTag::G3, global_ops(n));
}

OperatorSet g4(int n) {
  require_min(n, 3, "G4");
  auto ops = global_ops(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      for (Pauli a : kAxes) ops.push_back(pair(n, i, j, a));
    }
  }
  ops.push_back(global(n, Pauli::Z));
  return OperatorSet(n, SetTag::G4, std::move(ops));
}

OperatorSet full_set(int n) { return OperatorSet(n, SetTag::Full, enumerate_paulis(n, false)); }

OperatorSet parse_custom(std::span<const std::string> labels, int n) {
  std::vector<PauliString> ops;
  ops.reserve(labels.size());
  for (const auto& label : labels) ops.push_back(PauliString::parse(label, n));
  return OperatorSet(n, SetTag::Custom, std::move(ops));
}

OperatorSet operator_set(SetTag tag, int n) {
  switch (tag) {
    case SetTag::G1: return g1(n);
    case SetTag::G2: return g2(n);
    case SetTag::G3: return g3(n);
    case SetTag::G4: return g4(n);
    case SetTag::Full: return full_set(n);
    case SetTag::Custom: break;
  }
  throw std::invalid_argument("custom operator sets must be loaded from labels");
}

std::size_t operator_set_size(SetTag tag, int n) {
  const auto un = static_cast<std::size_t>(n);
  switch (tag) {
    case SetTag::G1: return 3 * un;
    case SetTag::G2: return 6 * un - 3;
    case SetTag::G3: return 6 * un - 1;
    case SetTag::G4: {
      require_min(n, 3, "G4");
      const std::size_t long_pairs = un * (un - 1) / 2 - (un - 1);
      return 6 * un - 1 + 3 * long_pairs + 1;
    }
    case SetTag::Full: return (std::size_t{1} << (2 * un)) - 1;
    case SetTag::Custom: break;
  }
  throw std::invalid_argument("custom operator set size depends on its labels");
}

}  // namespace sgqst
