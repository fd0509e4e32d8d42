#pragma once

#include <functional>
#include <memory>
#include <string>

#include "hypomix/types.hpp"

namespace hypomix {

/// The geometry induced by a full-rank stationary state sigma through the
/// weighted inner product <A, B> = tr(sigma A^dag B), together with an
/// orthonormal operator basis in which superoperators become plain matrices
/// and the weighted adjoint is the conjugate transpose.
///
/// The basis lives in sigma's eigenbasis: scaled matrix units E_ij / sqrt(s_j)
/// for i != j, and the diagonal sector rotated by a Householder reflection so
/// that basis element 0 is exactly the identity operator. Coordinates 1..d^2-1
/// therefore span { A : tr(sigma A) = 0 }.
class GnsFrame {
 public:
  /// Validates sigma (Hermitian, PSD, unit trace, each to 1e-10) and requires
  /// full rank: smallest eigenvalue > 1e-12 * largest, else FrameError.
  static std::shared_ptr<const GnsFrame> build(const Matrix& sigma);

  int dim() const { return static_cast<int>(sigma_.rows()); }
  std::size_t basis_size() const {
    return static_cast<std::size_t>(dim()) * static_cast<std::size_t>(dim());
  }
  const Matrix& sigma() const { return sigma_; }
  const RealVector& sigma_eigenvalues() const { return eigvals_; }
  double smallest_sigma_eigenvalue() const { return eigvals_.minCoeff(); }

  /// Basis operator for coordinate k. Index 0 is the identity; indices
  /// 1..d-1 complete the diagonal sector; the rest are scaled off-diagonal
  /// matrix units.
  Matrix basis_element(std::size_t k) const;
  std::size_t identity_index() const { return 0; }

  /// Full d^2 coordinate vector of an operator in this basis.
  Vector coords(const Matrix& a) const;
  Matrix from_coords(const Vector& c) const;

  /// Coordinates with the identity direction dropped (length d^2 - 1).
  Vector traceless_coords(const Matrix& a) const;
  Matrix from_traceless_coords(const Vector& c) const;

 private:
  GnsFrame() = default;

  Matrix sigma_;
  RealVector eigvals_;    // ascending
  Matrix eigvecs_;        // columns match eigvals_
  RealMatrix diag_rot_;   // orthogonal, column 0 = sqrt(eigvals_)
};

using FramePtr = std::shared_ptr<const GnsFrame>;

/// tr(sigma a^dag b).
Complex gns_inner(const GnsFrame& frame, const Matrix& a, const Matrix& b);
double gns_norm(const GnsFrame& frame, const Matrix& a);

/// A superoperator expressed as a matrix in a frame's coordinates, either on
/// the full d^2 space or compressed to the traceless block.
struct SuperOpMatrix {
  FramePtr frame;
  Matrix matrix;
  bool traceless = false;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// Column k holds the coordinates of action(basis_k). The built matrix is
/// spot-checked by reconstructing the action on random operators; a mismatch
/// beyond 1e-9 raises ContractError.
SuperOpMatrix superop_to_matrix(const FramePtr& frame,
                                const std::function<Matrix(const Matrix&)>& action);

/// Adjoint with respect to the weighted inner product: conjugate transpose
/// in frame coordinates.
SuperOpMatrix adjoint_gns(const SuperOpMatrix& m);

/// Compression to the traceless coordinates (the identity row and column
/// dropped); no-op if already compressed.
SuperOpMatrix restrict_traceless(const SuperOpMatrix& m);

/// Row-major [re, im] pair dump for debugging.
std::string superop_to_json(const SuperOpMatrix& m);

}  // namespace hypomix
