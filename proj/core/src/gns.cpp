#include "hypomix/gns.hpp"

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

namespace hypomix {

namespace {

constexpr double kStateTol = 1e-10;

Matrix random_operator(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  return a;
}

}  // namespace

std::shared_ptr<const GnsFrame> GnsFrame::build(const Matrix& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() < 1) {
    throw DimensionError("stationary state must be a square matrix");
  }
  if (hermiticity_defect(sigma) > kStateTol) {
    throw FrameError("stationary state is not Hermitian", 0.0);
  }
  if (std::abs(sigma.trace() - Complex(1.0)) > kStateTol) {
    throw FrameError("stationary state trace differs from one", 0.0);
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es((sigma + sigma.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) {
    throw SolverError("eigendecomposition of the stationary state failed");
  }
  const RealVector evals = es.eigenvalues();
  const double largest = evals.maxCoeff();
  const double smallest = evals.minCoeff();
  if (smallest < -kStateTol) {
    throw FrameError("stationary state has a negative eigenvalue", smallest);
  }
  if (smallest <= 1e-12 * largest) {
    throw FrameError("stationary state is numerically rank deficient",
                     smallest);
  }

  auto frame = std::shared_ptr<GnsFrame>(new GnsFrame());
  frame->sigma_ = sigma;
  frame->eigvals_ = evals;
  frame->eigvecs_ = es.eigenvectors();

  // Rotate the diagonal sector so the first basis element is the identity:
  // a Householder reflection sending e_0 to sqrt(s).
  const int d = frame->dim();
  RealVector sq = evals.cwiseSqrt();
  RealVector v = RealVector::Zero(d);
  v(0) = 1.0;
  v -= sq;
  RealMatrix w = RealMatrix::Identity(d, d);
  const double vv = v.squaredNorm();
  if (vv > 1e-28) {
    w -= (2.0 / vv) * (v * v.transpose());
  }
  frame->diag_rot_ = w;
  return frame;
}

Matrix GnsFrame::basis_element(std::size_t k) const {
  const int d = dim();
  const std::size_t n = basis_size();
  if (k >= n) throw DimensionError("basis index out of range");
  Matrix tilde = Matrix::Zero(d, d);
  if (k < static_cast<std::size_t>(d)) {
    for (int i = 0; i < d; ++i) {
      tilde(i, i) = diag_rot_(i, static_cast<int>(k)) / std::sqrt(eigvals_(i));
    }
  } else {
    std::size_t rest = k - static_cast<std::size_t>(d);
    // off-diagonal (i, j), row-major with the diagonal skipped
    const int i = static_cast<int>(rest / static_cast<std::size_t>(d - 1));
    int j = static_cast<int>(rest % static_cast<std::size_t>(d - 1));
    if (j >= i) ++j;
    tilde(i, j) = 1.0 / std::sqrt(eigvals_(j));
  }
  return eigvecs_ * tilde * eigvecs_.adjoint();
}

Vector GnsFrame::coords(const Matrix& a) const {
  const int d = dim();
  if (a.rows() != d || a.cols() != d) {
    throw DimensionError("operator dimension differs from frame");
  }
  const Matrix tilde = eigvecs_.adjoint() * a * eigvecs_;
  Vector c(static_cast<Eigen::Index>(basis_size()));
  Vector vdiag(d);
  for (int i = 0; i < d; ++i) vdiag(i) = std::sqrt(eigvals_(i)) * tilde(i, i);
  c.head(d) = diag_rot_.transpose().cast<Complex>() * vdiag;
  Eigen::Index idx = d;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      c(idx++) = std::sqrt(eigvals_(j)) * tilde(i, j);
    }
  }
  return c;
}

Matrix GnsFrame::from_coords(const Vector& c) const {
  const int d = dim();
  if (c.size() != static_cast<Eigen::Index>(basis_size())) {
    throw DimensionError("coordinate vector length differs from frame");
  }
  Matrix tilde = Matrix::Zero(d, d);
  const Vector vdiag = diag_rot_.cast<Complex>() * c.head(d);
  for (int i = 0; i < d; ++i) tilde(i, i) = vdiag(i) / std::sqrt(eigvals_(i));
  Eigen::Index idx = d;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      tilde(i, j) = c(idx++) / std::sqrt(eigvals_(j));
    }
  }
  return eigvecs_ * tilde * eigvecs_.adjoint();
}

Vector GnsFrame::traceless_coords(const Matrix& a) const {
  return coords(a).tail(static_cast<Eigen::Index>(basis_size()) - 1);
}

Matrix GnsFrame::from_traceless_coords(const Vector& c) const {
  Vector full(static_cast<Eigen::Index>(basis_size()));
  full(0) = 0.0;
  full.tail(full.size() - 1) = c;
  return from_coords(full);
}

Complex gns_inner(const GnsFrame& frame, const Matrix& a, const Matrix& b) {
  const int d = frame.dim();
  if (a.rows() != d || a.cols() != d || b.rows() != d || b.cols() != d) {
    throw DimensionError("operator dimension differs from frame");
  }
  return (frame.sigma() * a.adjoint() * b).trace();
}

double gns_norm(const GnsFrame& frame, const Matrix& a) {
  const double n2 = gns_inner(frame, a, a).real();
  return std::sqrt(std::max(0.0, n2));
}

SuperOpMatrix superop_to_matrix(
    const FramePtr& frame, const std::function<Matrix(const Matrix&)>& action) {
  if (!frame) throw DimensionError("null frame");
  const Eigen::Index n = static_cast<Eigen::Index>(frame->basis_size());
  Matrix m(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    m.col(k) = frame->coords(action(frame->basis_element(static_cast<std::size_t>(k))));
  }

  // Linearity / reconstruction spot check on seeded random operators.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  for (int trial = 0; trial < 2; ++trial) {
    const Matrix a = random_operator(frame->dim(), rng);
    const Matrix direct = action(a);
    const Matrix rebuilt = frame->from_coords(m * frame->coords(a));
    const double scale =
        std::max({1.0, max_abs(a), max_abs(direct)});
    if (max_abs(direct - rebuilt) > 1e-9 * scale) {
      throw ContractError(
          "map is not linear: matrix reconstruction mismatch of " +
          std::to_string(max_abs(direct - rebuilt)));
    }
  }
  return SuperOpMatrix{frame, std::move(m), false};
}

SuperOpMatrix adjoint_gns(const SuperOpMatrix& m) {
  return SuperOpMatrix{m.frame, m.matrix.adjoint(), m.traceless};
}

SuperOpMatrix restrict_traceless(const SuperOpMatrix& m) {
  if (m.traceless) return m;
  const Eigen::Index n = m.matrix.rows();
  return SuperOpMatrix{m.frame, m.matrix.bottomRightCorner(n - 1, n - 1), true};
}

std::string superop_to_json(const SuperOpMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.matrix.cols(); ++j) {
      entries.push_back({m.matrix(i, j).real(), m.matrix(i, j).imag()});
    }
  }
  nlohmann::json out{{"dim", m.matrix.rows()},
                     {"traceless", m.traceless},
                     {"data", std::move(entries)}};
  return out.dump();
}

}  // namespace hypomix
