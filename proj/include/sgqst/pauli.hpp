#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace sgqst {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Largest qubit count for which dense 2^n x 2^n matrices are ever formed.
inline constexpr int kDenseQubitCap = 12;

/// Largest qubit count a PauliString can address (one bit per site in a 64-bit mask).
inline constexpr int kMaxPauliQubits = 63;

/// Imaginary parts of Tr(rho P) above this signal a non-Hermitian input.
inline constexpr double kExpectationImagTol = 1e-10;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);

/// An n-site word over {I, X, Y, Z}.
///
/// Site 0 is the leftmost character of the label and acts on the most
/// significant bit of the computational-basis index, so |0...0> is index 0
/// and |1...1> is index 2^n - 1. Internally the string is stored as an
/// (x, z) bit pair per site: X = (1,0), Z = (0,1), Y = (1,1).
class PauliString {
 public:
  /// Identity on n sites.
  explicit PauliString(int n);
  PauliString(std::initializer_list<Pauli> symbols);
  explicit PauliString(const std::vector<Pauli>& symbols);

  /// Parses an n-character label over {I,X,Y,Z}; lower case is accepted.
  /// Throws std::invalid_argument on a length mismatch or a foreign character.
  static PauliString parse(std::string_view text, int n);
  /// Same as parse() with n taken from the label length.
  static PauliString parse(std::string_view text);

  int num_qubits() const { return n_; }
  int weight() const;
  bool is_identity() const { return x_mask_ == 0 && z_mask_ == 0; }
  Pauli at(int site) const;
  std::string label() const;

  std::uint64_t x_mask() const { return x_mask_; }
  std::uint64_t z_mask() const { return z_mask_; }
  int y_count() const;

  /// Phase of the column action P|b> = phase(b) |b ^ x_mask>.
  cplx phase(std::uint64_t basis) const;

  /// Lexicographic order on labels with I < X < Y < Z.
  std::strong_ordering operator<=>(const PauliString& other) const;
  bool operator==(const PauliString& other) const = default;

 private:
  PauliString(int n, std::uint64_t x, std::uint64_t z) : n_(n), x_mask_(x), z_mask_(z) {}
  std::uint64_t bit(int site) const { return std::uint64_t{1} << (n_ - 1 - site); }
  void set(int site, Pauli p);

  int n_ = 1;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
};

/// All Pauli strings on n sites in lexicographic order (I < X < Y < Z, site 0 most significant).
std::vector<PauliString> enumerate_paulis(int n, bool include_identity);

/// Dense Kronecker-product matrix of p. Throws std::length_error above kDenseQubitCap.
CMatrix to_matrix(const PauliString& p);

/// Tr(rho P) by a signed-permutation sweep over basis columns, O(2^n).
/// Throws std::invalid_argument on dimension mismatch or if the imaginary
/// part exceeds kExpectationImagTol.
double expectation(const CMatrix& rho, const PauliString& p);

/// The complex trace Tr(A P) without the Hermiticity check.
cplx trace_product(const CMatrix& a, const PauliString& p);

/// 2^n, validating n against kDenseQubitCap.
Index dense_dim(int n);

}  // namespace sgqst
