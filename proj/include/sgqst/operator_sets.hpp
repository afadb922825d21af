#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sgqst/pauli.hpp"

namespace sgqst {

enum class SetTag { G1, G2, G3, G4, Full, Custom };

std::string to_string(SetTag tag);
/// Case-insensitive "g1".."g4", "full", "custom". Throws std::invalid_argument otherwise.
SetTag parse_set_tag(std::string_view text);

/// An ordered list of distinct non-identity Pauli strings on n qubits.
class OperatorSet {
 public:
  /// Validates distinctness, length and non-identity; errors name the offending label.
  OperatorSet(int n, SetTag tag, std::vector<PauliString> operators);

  int num_qubits() const { return n_; }
  SetTag tag() const { return tag_; }
  std::size_t size() const { return ops_.size(); }
  const std::vector<PauliString>& operators() const { return ops_; }
  std::span<const PauliString> span() const { return ops_; }
  const PauliString& operator[](std::size_t k) const { return ops_[k]; }
  bool contains(const PauliString& p) const;
  std::vector<std::string> labels() const;

  auto begin() const { return ops_.begin(); }
  auto end() const { return ops_.end(); }

 private:
  int n_;
  SetTag tag_;
  std::vector<PauliString> ops_;
};

/// Single-site X_i, Y_i, Z_i (site-major); 3n operators.
OperatorSet g1(int n);
/// g1 plus open-chain nearest-neighbour XX, YY, ZZ; 6n - 3 operators. Requires n >= 2.
OperatorSet g2(int n);
/// g2 plus X^n and Y^n; 6n - 1 operators. Requires n >= 3.
OperatorSet g3(int n);
/// g3 plus XX, YY, ZZ on every pair with |i - j| >= 2, plus Z^n. Requires n >= 3.
/// Sizes: 21 (n=3), 33 (n=4), 48 (n=5).
OperatorSet g4(int n);
/// All 4^n - 1 non-identity strings in enumerate order.
OperatorSet full_set(int n);
/// User-supplied labels, order preserved.
OperatorSet parse_custom(std::span<const std::string> labels, int n);

/// Constructs the named set; Custom is rejected here.
OperatorSet operator_set(SetTag tag, int n);

/// Parameter count of a structured set without building it (3n, 6n-3, 6n-1, |g4|, 4^n-1).
std::size_t operator_set_size(SetTag tag, int n);

}  // namespace sgqst
