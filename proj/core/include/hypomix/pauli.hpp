#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hypomix/types.hpp"

namespace hypomix {

/// Largest qubit count accepted for dense conversion (d = 64, so
/// superoperators stay at most 4096 x 4096).
inline constexpr int kMaxDenseQubits = 6;

/// An N-qubit Pauli string in the symplectic (x, z) mask encoding: bit i of
/// x_mask set means site i carries X or Y, bit i of z_mask set means site i
/// carries Z or Y. The represented operator is the tensor product of the
/// usual Hermitian Pauli matrices (phase convention Y = i X Z per site).
class PauliString {
 public:
  PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  static PauliString identity(int n_qubits);
  /// Single non-identity Pauli ('X', 'Y' or 'Z') at one site.
  static PauliString single(int n_qubits, int site, char pauli);
  /// Parse a label like "XZIY", left-to-right = qubit 0..N-1.
  static PauliString from_label(const std::string& label);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t x_mask() const { return x_mask_; }
  std::uint64_t z_mask() const { return z_mask_; }

  bool is_identity() const { return x_mask_ == 0 && z_mask_ == 0; }
  bool is_z_string() const { return x_mask_ == 0; }
  /// Number of sites carrying X or Y.
  int xy_weight() const;
  char pauli_at(int site) const;
  bool commutes_with(const PauliString& other) const;

  std::string label() const;
  Matrix to_dense() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  /// Canonical ordering used for term merging.
  friend bool operator<(const PauliString& a, const PauliString& b) {
    if (a.x_mask_ != b.x_mask_) return a.x_mask_ < b.x_mask_;
    return a.z_mask_ < b.z_mask_;
  }

 private:
  int n_qubits_;
  std::uint64_t x_mask_;
  std::uint64_t z_mask_;
};

struct PauliProduct {
  Complex phase;  // one of +1, -1, +i, -i
  PauliString string;
};

/// Product of two Pauli strings: phase * string equals the matrix product.
PauliProduct multiply(const PauliString& p, const PauliString& q);

struct PauliTerm {
  Complex coeff;
  PauliString string;
};

/// A complex linear combination of Pauli strings, kept canonical: terms are
/// sorted, duplicates merged, and coefficients below 1e-14 dropped.
class PauliSum {
 public:
  explicit PauliSum(int n_qubits);
  PauliSum(int n_qubits, std::vector<PauliTerm> terms);

  PauliSum& add(Complex coeff, const PauliString& s);

  int n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// True when every canonical coefficient is real, which for Hermitian
  /// Pauli strings is equivalent to the sum being a Hermitian operator.
  bool is_hermitian(double tol = 1e-12) const;

  Matrix to_dense() const;

  std::string to_json() const;
  static PauliSum from_json(const std::string& text);

 private:
  void canonicalize();

  int n_qubits_;
  std::vector<PauliTerm> terms_;
};

/// [p, q] as a Pauli sum: empty when the strings commute, otherwise the
/// single term 2 * phase * (p q).
PauliSum commutator(const PauliString& p, const PauliString& q);

/// Eigenvalue of the uniform dephasing dissipator
///   D A = gamma * sum_i (Z_i A Z_i - A)
/// on the Pauli string p, namely -2 gamma * (number of X/Y sites).
double dephasing_eigenvalue(const PauliString& p, double gamma);

}  // namespace hypomix
