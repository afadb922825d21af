#include "sgqst/pauli.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace sgqst {

namespace {

void check_qubits(int n) {
  if (n < 1 || n > kMaxPauliQubits) {
    throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxPauliQubits) +
                                "], got " + std::to_string(n));
  }
}

Pauli from_char(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("malformed operator: character '") + c +
                                  "' is not one of I, X, Y, Z");
  }
}

// i^k for k mod 4
cplx i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

char to_char(Pauli p) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

PauliString::PauliString(int n) : n_(n) { check_qubits(n); }

PauliString::PauliString(std::initializer_list<Pauli> symbols)
    : PauliString(std::vector<Pauli>(symbols)) {}

PauliString::PauliString(const std::vector<Pauli>& symbols) : n_(static_cast<int>(symbols.size())) {
  check_qubits(n_);
  for (int i = 0; i < n_; ++i) set(i, symbols[static_cast<std::size_t>(i)]);
}

PauliString PauliString::parse(std::string_view text, int n) {
  check_qubits(n);
  if (static_cast<int>(text.size()) != n) {
    throw std::invalid_argument("malformed operator '" + std::string(text) + "': expected " +
                                std::to_string(n) + " characters, got " +
                                std::to_string(text.size()));
  }
  PauliString p(n);
  for (int i = 0; i < n; ++i) {
    try {
      p.set(i, from_char(text[static_cast<std::size_t>(i)]));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("malformed operator '" + std::string(text) + "': " + e.what());
    }
  }
  return p;
}

PauliString PauliString::parse(std::string_view text) {
  return parse(text, static_cast<int>(text.size()));
}

void PauliString::set(int site, Pauli p) {
  const auto b = bit(site);
  x_mask_ &= ~b;
  z_mask_ &= ~b;
  if (p == Pauli::X || p == Pauli::Y) x_mask_ |= b;
  if (p == Pauli::Z || p == Pauli::Y) z_mask_ |= b;
}

Pauli PauliString::at(int site) const {
  if (site < 0 || site >= n_) throw std::out_of_range("Pauli site out of range");
  const bool x = (x_mask_ & bit(site)) != 0;
  const bool z = (z_mask_ & bit(site)) != 0;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

int PauliString::weight() const { return std::popcount(x_mask_ | z_mask_); }

int PauliString::y_count() const { return std::popcount(x_mask_ & z_mask_); }

std::string PauliString::label() const {
  std::string out(static_cast<std::size_t>(n_), 'I');
  for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = to_char(at(i));
  return out;
}

cplx PauliString::phase(std::uint64_t basis) const {
  // X|b> = |1-b>, Y|b> = i(-1)^b |1-b>, Z|b> = (-1)^b |b>
  const int sign_flips = std::popcount(basis & z_mask_);
  return i_power(y_count() + 2 * sign_flips);
}

std::strong_ordering PauliString::operator<=>(const PauliString& other) const {
  if (n_ != other.n_) return n_ <=> other.n_;
  for (int i = 0; i < n_; ++i) {
    const auto a = static_cast<int>(at(i));
    const auto b = static_cast<int>(other.at(i));
    if (a != b) return a <=> b;
  }
  return std::strong_ordering::equal;
}

Index dense_dim(int n) {
  if (n < 1 || n > kDenseQubitCap) {
    throw std::length_error("dense dimension cap exceeded: n = " + std::to_string(n) +
                            " (cap " + std::to_string(kDenseQubitCap) + ")");
  }
  return Index{1} << n;
}

std::vector<PauliString> enumerate_paulis(int n, bool include_identity) {
  dense_dim(n);
  const std::uint64_t total = std::uint64_t{1} << (2 * n);
  std::vector<PauliString> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<Pauli> symbols(static_cast<std::size_t>(n));
  for (std::uint64_t code = include_identity ? 0 : 1; code < total; ++code) {
    // base-4 digits, site 0 most significant
    for (int site = 0; site < n; ++site) {
      const int shift = 2 * (n - 1 - site);
      symbols[static_cast<std::size_t>(site)] = static_cast<Pauli>((code >> shift) & 3U);
    }
    out.emplace_back(symbols);
  }
  return out;
}

CMatrix to_matrix(const PauliString& p) {
  const Index dim = dense_dim(p.num_qubits());
  CMatrix m = CMatrix::Zero(dim, dim);
  const auto x = p.x_mask();
  for (Index b = 0; b < dim; ++b) {
    const auto col = static_cast<std::uint64_t>(b);
    m(static_cast<Index>(col ^ x), b) = p.phase(col);
  }
  return m;
}

cplx trace_product(const CMatrix& a, const PauliString& p) {
  const Index dim = Index{1} << p.num_qubits();
  if (p.num_qubits() > kDenseQubitCap || a.rows() != dim || a.cols() != dim) {
    throw std::invalid_argument("dimension mismatch between matrix (" + std::to_string(a.rows()) +
                                "x" + std::to_string(a.cols()) + ") and Pauli string " + p.label());
  }
  // Tr(A P) = sum_b A[b, b^x] phase(b)
  const auto x = p.x_mask();
  const auto z = p.z_mask();
  cplx even{0.0, 0.0};
  cplx odd{0.0, 0.0};
  for (Index b = 0; b < dim; ++b) {
    const auto col = static_cast<std::uint64_t>(b);
    const cplx v = a(b, static_cast<Index>(col ^ x));
    if (std::popcount(col & z) & 1) {
      odd += v;
    } else {
      even += v;
    }
  }
  const cplx base = p.phase(0);
  return base * (even - odd);
}

double expectation(const CMatrix& rho, const PauliString& p) {
  const cplx t = trace_product(rho, p);
  if (std::abs(t.imag()) > kExpectationImagTol) {
    throw std::invalid_argument("Tr(rho " + p.label() + ") has imaginary part " +
                                std::to_string(t.imag()) + "; input is not Hermitian");
  }
  return t.real();
}

}  // namespace sgqst
