#include "hypomix/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "hypomix/pauli.hpp"
#include "json_util.hpp"

namespace hypomix {

namespace {

constexpr double kHermTol = 1e-10;

Matrix vec_to_matrix(const Vector& v, Eigen::Index d) {
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

/// Hermitize, clip tiny negative eigenvalues, renormalize the trace.
/// Rejects genuinely negative spectra.
Matrix psd_repair(const Matrix& rho_raw) {
  Matrix rho = (rho_raw + rho_raw.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  RealVector evals = es.eigenvalues();
  const double scale = evals.cwiseAbs().maxCoeff();
  if (evals.minCoeff() < -1e-10 * std::max(1.0, scale)) {
    throw SolverError("kernel element is not positive semi-definite (min eig " +
                      std::to_string(evals.minCoeff()) + ")");
  }
  evals = evals.cwiseMax(0.0);
  rho = es.eigenvectors() * evals.asDiagonal().toDenseMatrix().cast<Complex>() *
        es.eigenvectors().adjoint();
  const double tr = rho.trace().real();
  if (std::abs(tr) < 1e-14) {
    throw SolverError("kernel element has vanishing trace");
  }
  return rho / tr;
}

}  // namespace

void validate_model(const LindbladModel& model) {
  if (model.dim < 1) throw ModelError("model dimension must be positive");
  if (model.hamiltonian.rows() != model.dim ||
      model.hamiltonian.cols() != model.dim) {
    throw DimensionError("hamiltonian dimension differs from model");
  }
  if (hermiticity_defect(model.hamiltonian) >
      kHermTol * std::max(1.0, max_abs(model.hamiltonian))) {
    throw ModelError("hamiltonian is not Hermitian");
  }
  for (const Matrix& v : model.jumps) {
    if (v.rows() != model.dim || v.cols() != model.dim) {
      throw DimensionError("jump operator dimension differs from model");
    }
  }
  if (model.sigma_hint &&
      (model.sigma_hint->rows() != model.dim ||
       model.sigma_hint->cols() != model.dim)) {
    throw DimensionError("sigma hint dimension differs from model");
  }
}

Matrix apply_hamiltonian_part(const LindbladModel& model, const Matrix& a) {
  const Matrix& h = model.hamiltonian;
  return Complex(0, 1) * (h * a - a * h);
}

Matrix apply_dissipator(const LindbladModel& model, const Matrix& a) {
  Matrix out = Matrix::Zero(model.dim, model.dim);
  for (const Matrix& v : model.jumps) {
    const Matrix vd = v.adjoint();
    out += vd * (a * v - v * a) + (vd * a - a * vd) * v;
  }
  return out;
}

Matrix apply_heisenberg(const LindbladModel& model, const Matrix& a) {
  return apply_hamiltonian_part(model, a) + apply_dissipator(model, a);
}

Matrix apply_schrodinger(const LindbladModel& model, const Matrix& rho) {
  const Matrix& h = model.hamiltonian;
  Matrix out = Complex(0, -1) * (h * rho - rho * h);
  for (const Matrix& v : model.jumps) {
    const Matrix vd = v.adjoint();
    const Matrix vdv = vd * v;
    out += 2.0 * v * rho * vd - vdv * rho - rho * vdv;
  }
  return out;
}

Matrix heisenberg_vec_generator(const LindbladModel& model) {
  validate_model(model);
  const Eigen::Index d = model.dim;
  const Matrix id = Matrix::Identity(d, d);
  const Matrix& h = model.hamiltonian;
  Matrix gen = Complex(0, 1) * (kron(id, h) - kron(h.transpose(), id));
  for (const Matrix& v : model.jumps) {
    const Matrix vd = v.adjoint();
    const Matrix vdv = vd * v;
    gen += 2.0 * kron(v.transpose(), vd) - kron(id, vdv) -
           kron(vdv.transpose(), id);
  }
  return gen;
}

Matrix schrodinger_vec_generator(const LindbladModel& model) {
  validate_model(model);
  const Eigen::Index d = model.dim;
  const Matrix id = Matrix::Identity(d, d);
  const Matrix& h = model.hamiltonian;
  Matrix gen = Complex(0, -1) * (kron(id, h) - kron(h.transpose(), id));
  for (const Matrix& v : model.jumps) {
    const Matrix vd = v.adjoint();
    const Matrix vdv = vd * v;
    gen += 2.0 * kron(v.conjugate(), v) - kron(id, vdv) -
           kron(vdv.transpose(), id);
  }
  return gen;
}

HeisenbergSuperops build_heisenberg(const LindbladModel& model,
                                    const FramePtr& frame) {
  validate_model(model);
  if (!frame) throw Error("missing frame for superoperator construction");
  if (frame->dim() != model.dim) {
    throw DimensionError("frame dimension differs from model");
  }
  auto ham = superop_to_matrix(
      frame, [&](const Matrix& a) { return apply_hamiltonian_part(model, a); });
  auto dis = superop_to_matrix(
      frame, [&](const Matrix& a) { return apply_dissipator(model, a); });
  return HeisenbergSuperops{std::move(ham), std::move(dis)};
}

SuperOpMatrix build_schrodinger(const LindbladModel& model,
                                const FramePtr& frame) {
  validate_model(model);
  if (!frame) throw Error("missing frame for superoperator construction");
  if (frame->dim() != model.dim) {
    throw DimensionError("frame dimension differs from model");
  }
  return superop_to_matrix(
      frame, [&](const Matrix& rho) { return apply_schrodinger(model, rho); });
}

StationaryState stationary_state(const LindbladModel& model) {
  validate_model(model);
  const Eigen::Index d = model.dim;

  if (model.sigma_hint) {
    const Matrix& sigma = *model.sigma_hint;
    if (hermiticity_defect(sigma) > kHermTol ||
        std::abs(sigma.trace() - Complex(1.0)) > kHermTol) {
      throw ModelError("sigma hint is not a Hermitian unit-trace state");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
    if (es.eigenvalues().minCoeff() < -kHermTol) {
      throw ModelError("sigma hint has a negative eigenvalue");
    }
    const double residual = max_abs(apply_schrodinger(model, sigma));
    double scale = std::max(1.0, max_abs(model.hamiltonian));
    for (const Matrix& v : model.jumps) scale += max_abs(v) * max_abs(v);
    if (residual > 1e-9 * scale) {
      throw ModelError("sigma hint is not stationary (residual " +
                       std::to_string(residual) + ")");
    }
    return StationaryState{sigma, 1, false, residual};
  }

  // Null space via a full SVD: orthonormal null directions regardless of
  // eigenvalue degeneracy (eigenvector back-substitution is unreliable on
  // degenerate non-normal generators).
  const Matrix gen = schrodinger_vec_generator(model);
  Eigen::BDCSVD<Matrix> svd(gen, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double zero_tol = 1e-9 * std::max(1e-30, sv(0));
  Eigen::Index null_dim = 0;
  for (Eigen::Index k = sv.size() - 1; k >= 0 && sv(k) <= zero_tol; --k) {
    ++null_dim;
  }
  if (null_dim == 0) {
    throw SolverError("state generator has numerically empty kernel");
  }

  StationaryState out;
  out.kernel_dim = static_cast<int>(null_dim);
  out.multiplicity_warning = null_dim > 1;

  Vector target;
  if (null_dim == 1) {
    target = svd.matrixV().col(sv.size() - 1);
  } else {
    // Deterministic selection: project the maximally mixed state onto the
    // kernel span.
    const Matrix null_basis = svd.matrixV().rightCols(null_dim);
    Vector mixed = Vector::Zero(gen.rows());
    for (Eigen::Index i = 0; i < d; ++i) mixed(i * d + i) = 1.0 / double(d);
    target = null_basis * (null_basis.adjoint() * mixed);
    if (target.norm() < 1e-12) {
      throw SolverError("maximally mixed projection onto kernel vanished");
    }
  }

  // remove the arbitrary global phase so Hermitization cannot cancel it
  const Complex raw_trace = vec_to_matrix(target, d).trace();
  if (std::abs(raw_trace) < 1e-12) {
    throw SolverError("kernel element has vanishing trace");
  }
  target *= std::conj(raw_trace) / std::abs(raw_trace);

  out.sigma = psd_repair(vec_to_matrix(target, d));
  out.residual = max_abs(apply_schrodinger(model, out.sigma));
  const double scale = std::max(1.0, max_abs(gen));
  if (out.residual > 1e-9 * scale) {
    throw SolverError("stationary state residual too large: " +
                      std::to_string(out.residual));
  }
  return out;
}

SpectralReport exact_spectrum(const LindbladModel& model) {
  validate_model(model);
  if (static_cast<long>(model.dim) * model.dim > 4096) {
    throw SizeError("exact spectrum capped at superoperator dimension 4096");
  }
  const Matrix gen = heisenberg_vec_generator(model);
  Eigen::ComplexEigenSolver<Matrix> es(gen, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw SolverError("eigendecomposition of the Heisenberg generator failed");
  }

  SpectralReport report;
  report.eigenvalues.assign(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
  const double zero_tol = 1e-9 * std::max(1e-30, max_abs(gen));
  double gap = std::numeric_limits<double>::infinity();
  for (const Complex& e : report.eigenvalues) {
    if (e.real() > 1e-9 * std::max(1.0, max_abs(gen))) {
      throw SolverError("generator spectrum leaked into the right half-plane");
    }
    if (std::abs(e) <= zero_tol) {
      ++report.kernel_dim;
    } else {
      gap = std::min(gap, -e.real());
    }
  }
  report.gap = std::isfinite(gap) ? std::max(0.0, gap) : 0.0;
  report.primitive = report.kernel_dim == 1;
  return report;
}

namespace {

Matrix operator_from_json(const nlohmann::json& j, int expected_dim) {
  if (j.is_array()) {
    const Matrix m = PauliSum::from_json(j.dump()).to_dense();
    if (expected_dim > 0 && m.rows() != expected_dim) {
      throw InputError("pauli operator dimension differs from model");
    }
    return m;
  }
  Matrix m = detail::matrix_from_json(j);
  if (expected_dim > 0 && m.rows() != expected_dim) {
    throw InputError("dense operator dimension differs from model");
  }
  return m;
}

}  // namespace

namespace {

LindbladModel model_from_parsed_json(const nlohmann::json& j);

}  // namespace

LindbladModel model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("model JSON parse error: ") + e.what());
  }
  try {
    return model_from_parsed_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("model JSON has wrong value types: ") +
                     e.what());
  }
}

namespace {

LindbladModel model_from_parsed_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("model JSON must be an object");

  LindbladModel model;
  model.name = j.value("name", std::string("model"));
  if (j.contains("dim")) {
    model.dim = j["dim"].get<int>();
  } else if (j.contains("n_qubits")) {
    const int n = j["n_qubits"].get<int>();
    if (n < 1 || n > kMaxDenseQubits) {
      throw InputError("n_qubits out of supported range");
    }
    model.dim = 1 << n;
  } else {
    throw InputError("model JSON needs \"dim\" or \"n_qubits\"");
  }
  if (model.dim < 1 || model.dim > 64) {
    throw InputError("model dimension out of supported range [1, 64]");
  }

  if (!j.contains("hamiltonian")) {
    throw InputError("model JSON needs \"hamiltonian\"");
  }
  model.hamiltonian = operator_from_json(j["hamiltonian"], model.dim);

  if (j.contains("jumps")) {
    if (!j["jumps"].is_array()) throw InputError("\"jumps\" must be an array");
    for (const auto& item : j["jumps"]) {
      model.jumps.push_back(operator_from_json(item, model.dim));
    }
  }
  if (j.contains("sigma")) {
    model.sigma_hint = detail::matrix_from_json(j["sigma"]);
    if (model.sigma_hint->rows() != model.dim) {
      throw InputError("sigma dimension differs from model");
    }
  }
  if (j.contains("params")) {
    for (const auto& [key, value] : j["params"].items()) {
      if (value.is_number()) model.params[key] = value.get<double>();
    }
  }
  validate_model(model);
  return model;
}

}  // namespace

std::string model_to_json(const LindbladModel& model) {
  nlohmann::json j;
  j["name"] = model.name;
  j["dim"] = model.dim;
  j["hamiltonian"] = detail::matrix_to_json(model.hamiltonian);
  j["jumps"] = nlohmann::json::array();
  for (const Matrix& v : model.jumps) {
    j["jumps"].push_back(detail::matrix_to_json(v));
  }
  if (model.sigma_hint) j["sigma"] = detail::matrix_to_json(*model.sigma_hint);
  j["params"] = model.params;
  return j.dump();
}

}  // namespace hypomix
