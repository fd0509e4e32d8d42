#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace hypomix {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operands with incompatible dimensions or qubit counts.
struct DimensionError : Error {
  using Error::Error;
};

/// Dense conversion requested beyond the supported size cap.
struct SizeError : Error {
  using Error::Error;
};

/// The stationary state is unusable as an inner-product weight
/// (not Hermitian/PSD/trace-one, or numerically rank deficient).
struct FrameError : Error {
  FrameError(const std::string& what, double smallest)
      : Error(what), smallest_eigenvalue(smallest) {}
  double smallest_eigenvalue;
};

/// A map handed to the matrix builder failed the linearity spot check.
struct ContractError : Error {
  using Error::Error;
};

/// Numerical kernel extraction or eigensolve failure.
struct SolverError : Error {
  using Error::Error;
};

/// Invalid model construction parameters.
struct ModelError : Error {
  using Error::Error;
};

/// Malformed external input (JSON, CLI values).
struct InputError : Error {
  using Error::Error;
};

/// Argument outside the mathematical domain of a formula.
struct DomainError : Error {
  using Error::Error;
};

/// A target accuracy was not reached within the supplied time grid.
struct HorizonError : Error {
  HorizonError(const std::string& what, double distance)
      : Error(what), last_distance(distance) {}
  double last_distance;
};

inline double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

/// ||A - A^dag||_max, zero for exactly Hermitian input.
inline double hermiticity_defect(const Matrix& a) {
  return max_abs(a - a.adjoint());
}

inline bool is_hermitian(const Matrix& a, double tol = 1e-12) {
  return hermiticity_defect(a) <= tol;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Sum of singular values.
inline double trace_norm(const Matrix& a) {
  return Eigen::BDCSVD<Matrix>(a).singularValues().sum();
}

/// Largest singular value.
inline double spectral_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return Eigen::BDCSVD<Matrix>(a).singularValues()(0);
}

}  // namespace hypomix
