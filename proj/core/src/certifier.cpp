#include "hypomix/certifier.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "json_util.hpp"

namespace hypomix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_traceless(const SuperOpMatrix& m, const char* who) {
  if (!m.traceless) {
    throw DimensionError(std::string(who) +
                         " expects a traceless-restricted superoperator");
  }
}

void require_same_frame(const SuperOpMatrix& a, const SuperOpMatrix& b) {
  if (a.frame != b.frame || a.matrix.rows() != b.matrix.rows()) {
    throw DimensionError("superoperators live in different frames");
  }
}

}  // namespace

KernelProjector kernel_projector(const SuperOpMatrix& dissipator) {
  require_traceless(dissipator, "kernel_projector");
  const Matrix& d = dissipator.matrix;
  const Eigen::Index n = d.rows();

  KernelProjector out;
  out.symmetry_residual = max_abs(d - d.adjoint());
  const double sym_tol = 1e-9 * max_abs(d);
  out.symmetry_ok = out.symmetry_residual <= sym_tol;

  Eigen::SelfAdjointEigenSolver<Matrix> es((d + d.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) {
    throw SolverError("eigendecomposition of the dissipative part failed");
  }
  const RealVector evals = es.eigenvalues();
  const double scale = evals.cwiseAbs().maxCoeff();
  out.kernel_tol = 1e-9 * scale;

  std::vector<Eigen::Index> kernel, complement;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(evals(k));
    if (mag <= out.kernel_tol) {
      kernel.push_back(k);
    } else {
      complement.push_back(k);
      if (mag <= 10.0 * out.kernel_tol) out.boundary_warning = true;
    }
  }

  out.traceless_kernel_dim = static_cast<int>(kernel.size());
  out.kernel_dim = out.traceless_kernel_dim + 1;  // identity always in ker D
  out.kernel_basis = Matrix(n, static_cast<Eigen::Index>(kernel.size()));
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    out.kernel_basis.col(static_cast<Eigen::Index>(i)) =
        es.eigenvectors().col(kernel[i]);
  }
  out.complement_basis = Matrix(n, static_cast<Eigen::Index>(complement.size()));
  for (std::size_t i = 0; i < complement.size(); ++i) {
    out.complement_basis.col(static_cast<Eigen::Index>(i)) =
        es.eigenvectors().col(complement[i]);
  }
  out.projector = SuperOpMatrix{
      dissipator.frame, out.kernel_basis * out.kernel_basis.adjoint(), true};
  return out;
}

double dissipative_gap(const SuperOpMatrix& dissipator,
                       const KernelProjector& proj) {
  require_traceless(dissipator, "dissipative_gap");
  if (proj.complement_basis.cols() == 0) return kInf;
  const Matrix sym = (dissipator.matrix + dissipator.matrix.adjoint()) / 2.0;
  const Matrix compressed = proj.complement_basis.adjoint() *
                            (-sym) * proj.complement_basis;
  Eigen::SelfAdjointEigenSolver<Matrix> es(compressed);
  return es.eigenvalues().minCoeff();
}

double stirring_gap(const SuperOpMatrix& hamiltonian_part,
                    const KernelProjector& proj) {
  require_traceless(hamiltonian_part, "stirring_gap");
  if (proj.kernel_basis.cols() == 0) return kInf;
  const Matrix hk = hamiltonian_part.matrix * proj.kernel_basis;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hk.adjoint() * hk);
  return std::max(0.0, es.eigenvalues().minCoeff());
}

double php_residual(const SuperOpMatrix& hamiltonian_part,
                    const KernelProjector& proj) {
  require_traceless(hamiltonian_part, "php_residual");
  if (proj.kernel_basis.cols() == 0) return 0.0;
  // ||P H P||_2 equals the norm of the kernel-to-kernel block K^dag H K.
  const Matrix block = proj.kernel_basis.adjoint() * hamiltonian_part.matrix *
                       proj.kernel_basis;
  return spectral_norm(block);
}

double boundedness_constant(const SuperOpMatrix& hamiltonian_part,
                            const SuperOpMatrix& dissipator,
                            const KernelProjector& proj) {
  require_traceless(hamiltonian_part, "boundedness_constant");
  require_same_frame(hamiltonian_part, dissipator);
  if (proj.complement_basis.cols() == 0) return 0.0;
  const double h_norm =
      spectral_norm(hamiltonian_part.matrix * proj.complement_basis);
  const double d_norm = spectral_norm(dissipator.matrix * proj.complement_basis);
  return h_norm + d_norm;
}

SuperOpMatrix build_twist_operator(const SuperOpMatrix& hamiltonian_part,
                                   const KernelProjector& proj, double alpha) {
  require_traceless(hamiltonian_part, "build_twist_operator");
  if (alpha <= 0) throw DomainError("twist weight alpha must be positive");
  const Eigen::Index n = hamiltonian_part.matrix.rows();
  const Matrix hp = hamiltonian_part.matrix * proj.projector.matrix;
  const Matrix lhs =
      alpha * Matrix::Identity(n, n) + hp.adjoint() * hp;
  Eigen::LDLT<Matrix> solver(lhs);
  if (solver.info() != Eigen::Success) {
    throw SolverError("twist operator solve failed");
  }
  Matrix twist = solver.solve(hp.adjoint());
  return SuperOpMatrix{hamiltonian_part.frame, std::move(twist), true};
}

double twist_condition_estimate(const SuperOpMatrix& hamiltonian_part,
                                const KernelProjector& proj, double alpha) {
  if (alpha <= 0) throw DomainError("twist weight alpha must be positive");
  const Matrix hp = hamiltonian_part.matrix * proj.projector.matrix;
  const double smax = spectral_norm(hp);
  return (alpha + smax * smax) / alpha;
}

double lyapunov_value(const Vector& coords, double eps,
                      const SuperOpMatrix& twist) {
  if (eps < 0.0 || eps >= 1.0) {
    throw DomainError("twist strength eps must lie in [0, 1)");
  }
  if (coords.size() != twist.matrix.rows()) {
    throw DimensionError("coordinate length differs from twist operator");
  }
  const double half_norm2 = 0.5 * coords.squaredNorm();
  if (eps == 0.0) return half_norm2;
  const Complex twisted = (twist.matrix * coords).dot(coords);
  return half_norm2 - eps * twisted.real();
}

BoundConstants bound_from_constants(double lambda_m, double lambda_M,
                                    double cm_prime, double alpha) {
  if (!(lambda_m > 0) || !(lambda_M > 0) || !(cm_prime > 0) || !(alpha > 0)) {
    throw DomainError("convergence constants need positive inputs");
  }
  const double cma = cm_prime / (2.0 * std::sqrt(alpha));
  const double mix = lambda_M / (alpha + lambda_M);
  BoundConstants out;
  out.epsilon =
      0.5 * std::min(lambda_m * mix / ((1.0 + cma) * (1.0 + cma)), 1.0);
  out.kappa = std::min(lambda_m / 4.0, out.epsilon / 3.0 * mix);
  out.delta = std::min(4.0 / 3.0 * mix / (1.0 + cma), 1.0);
  out.lambda = out.kappa / (1.0 + out.epsilon);
  out.big_c = std::sqrt((1.0 + out.epsilon) / (1.0 - out.epsilon));
  return out;
}

AlphaSearch optimize_alpha(double lambda_m, double lambda_M, double cm_prime) {
  if (!(lambda_m > 0) || !(lambda_M > 0) || !(cm_prime > 0)) {
    throw DomainError("alpha search needs positive inputs");
  }
  const auto rate = [&](double alpha) {
    return bound_from_constants(lambda_m, lambda_M, cm_prime, alpha).lambda;
  };

  AlphaSearch out;
  constexpr int kGridPoints = 65;
  const double lo = std::log10(lambda_M) - 2.0;
  const double hi = std::log10(lambda_M) + 2.0;
  int best = 0;
  for (int i = 0; i < kGridPoints; ++i) {
    const double alpha =
        std::pow(10.0, lo + (hi - lo) * double(i) / double(kGridPoints - 1));
    const double lam = rate(alpha);
    out.trace.emplace_back(alpha, lam);
    if (lam > out.trace[best].second) best = i;
  }

  // Golden-section refinement, in log-alpha, on the bracketing interval.
  double a = std::log10(out.trace[std::max(0, best - 1)].first);
  double b = std::log10(out.trace[std::min(kGridPoints - 1, best + 1)].first);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = rate(std::pow(10.0, x1));
  double f2 = rate(std::pow(10.0, x2));
  for (int iter = 0; iter < 80; ++iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = rate(std::pow(10.0, x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = rate(std::pow(10.0, x1));
    }
  }
  const double refined = std::pow(10.0, f1 >= f2 ? x1 : x2);
  const double refined_rate = rate(refined);

  const double grid_alpha = out.trace[best].first;
  const double grid_rate = out.trace[best].second;
  if (refined_rate > grid_rate ||
      (refined_rate == grid_rate && refined < grid_alpha)) {
    out.alpha_star = refined;
  } else {
    out.alpha_star = grid_alpha;
  }
  return out;
}

double mixing_time_bound(double lambda, double big_c, const Matrix& sigma,
                         double eps_target) {
  if (!(lambda > 0)) throw DomainError("decay rate must be positive");
  if (!(eps_target > 0)) throw DomainError("accuracy target must be positive");
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
  const double smin = es.eigenvalues().minCoeff();
  const double smax = es.eigenvalues().maxCoeff();
  if (smin <= 1e-12 * smax) {
    throw DomainError(
        "mixing-time bound needs a full-rank stationary state");
  }
  const double value = std::log(big_c / (smin * eps_target)) / lambda;
  return std::max(0.0, value);
}

double HypoCertificate::cm_alpha(double alpha) const {
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  return cm_prime / (2.0 * std::sqrt(alpha));
}

double HypoCertificate::tmix_bound(double eps_target) const {
  if (!passed) throw DomainError("certificate did not pass; no mixing bound");
  return mixing_time_bound(lambda, big_c, sigma, eps_target);
}

HypoCertificate certify(const LindbladModel& model) {
  validate_model(model);

  HypoCertificate cert;
  cert.model_name = model.name;
  cert.dim = model.dim;

  const StationaryState st = stationary_state(model);
  cert.sigma = st.sigma;
  cert.stationary_multiplicity_warning = st.multiplicity_warning;

  const FramePtr frame = GnsFrame::build(st.sigma);
  cert.sigma_min = frame->smallest_sigma_eigenvalue();

  const HeisenbergSuperops parts = build_heisenberg(model, frame);
  const SuperOpMatrix ht = restrict_traceless(parts.hamiltonian_part);
  const SuperOpMatrix dt = restrict_traceless(parts.dissipative_part);

  const double h_scale = max_abs(ht.matrix);
  const double d_scale = max_abs(dt.matrix);
  cert.residuals.h_skew = max_abs(ht.matrix + ht.matrix.adjoint());
  cert.residuals.d_symmetric = max_abs(dt.matrix - dt.matrix.adjoint());
  cert.residuals.sigma_commutes =
      max_abs(model.hamiltonian * st.sigma - st.sigma * model.hamiltonian);
  cert.tolerances.h_skew = 1e-9 * h_scale;
  cert.tolerances.d_symmetric = 1e-9 * d_scale;
  cert.tolerances.sigma_commutes = 1e-9 * std::max(1.0, max_abs(model.hamiltonian));
  cert.tolerances.php_zero = 1e-9 * h_scale;

  const KernelProjector proj = kernel_projector(dt);
  cert.kernel_dim = proj.kernel_dim;
  cert.kernel_boundary_warning = proj.boundary_warning;

  cert.lambda_m_numeric = dissipative_gap(dt, proj);
  cert.lambda_M_numeric = stirring_gap(ht, proj);
  cert.cm_prime_numeric = boundedness_constant(ht, dt, proj);
  cert.residuals.php_zero = php_residual(ht, proj);

  // Operative constants: validated analytic values where the model carries
  // them. lambda_m must agree with the tight numeric; lambda_M must be a
  // valid lower bound; cm_prime must be a valid upper bound.
  cert.lambda_m = cert.lambda_m_numeric;
  cert.lambda_M = cert.lambda_M_numeric;
  cert.cm_prime = cert.cm_prime_numeric;
  if (model.analytic.lambda_m) {
    const double ana = *model.analytic.lambda_m;
    if (std::abs(ana - cert.lambda_m_numeric) >
        1e-8 * std::max(std::abs(ana), 1e-30)) {
      throw ModelError("analytic lambda_m " + std::to_string(ana) +
                       " disagrees with numeric " +
                       std::to_string(cert.lambda_m_numeric));
    }
    cert.lambda_m = ana;
    cert.analytic_lambda_m = true;
  }
  if (model.analytic.lambda_M) {
    const double ana = *model.analytic.lambda_M;
    if (ana > cert.lambda_M_numeric * (1.0 + 1e-9) + 1e-12) {
      throw ModelError("analytic lambda_M " + std::to_string(ana) +
                       " exceeds the numeric stirring gap " +
                       std::to_string(cert.lambda_M_numeric));
    }
    cert.lambda_M = ana;
    cert.analytic_lambda_M = true;
  }
  if (model.analytic.cm_prime) {
    const double ana = *model.analytic.cm_prime;
    if (ana < cert.cm_prime_numeric * (1.0 - 1e-9) - 1e-12) {
      throw ModelError("analytic cm_prime " + std::to_string(ana) +
                       " is below the numeric bound " +
                       std::to_string(cert.cm_prime_numeric));
    }
    cert.cm_prime = ana;
    cert.analytic_cm_prime = true;
  }

  cert.hypocoercive_applicable = proj.traceless_kernel_dim > 0 &&
                                 proj.complement_basis.cols() > 0;
  cert.condition_gap_ok =
      proj.symmetry_ok && cert.lambda_m > 0 && std::isfinite(cert.lambda_m);
  cert.condition_stirring_ok =
      cert.residuals.h_skew <= cert.tolerances.h_skew &&
      std::isfinite(cert.lambda_M) &&
      cert.lambda_M > 1e-9 * std::max(1.0, h_scale * h_scale);
  cert.condition_escape_ok =
      cert.residuals.php_zero <= std::max(cert.tolerances.php_zero, 1e-30);
  cert.condition_bounded_ok = std::isfinite(cert.cm_prime);

  cert.passed = cert.hypocoercive_applicable && cert.condition_gap_ok &&
                cert.condition_stirring_ok && cert.condition_escape_ok &&
                cert.condition_bounded_ok;

  if (cert.passed) {
    AlphaSearch search =
        optimize_alpha(cert.lambda_m, cert.lambda_M, cert.cm_prime);
    cert.alpha_star = search.alpha_star;
    cert.alpha_trace = std::move(search.trace);
    const BoundConstants bc = bound_from_constants(
        cert.lambda_m, cert.lambda_M, cert.cm_prime, cert.alpha_star);
    cert.epsilon = bc.epsilon;
    cert.kappa = bc.kappa;
    cert.delta = bc.delta;
    cert.lambda = bc.lambda;
    cert.big_c = bc.big_c;
    cert.twist_ill_conditioned =
        twist_condition_estimate(ht, proj, cert.alpha_star) > 1e12;
  } else {
    cert.alpha_star = kNaN;
    cert.epsilon = kNaN;
    cert.kappa = kNaN;
    cert.delta = kNaN;
    cert.lambda = kNaN;
    cert.big_c = kNaN;
  }
  return cert;
}

std::string HypoCertificate::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["model"] = model_name;
  j["dim"] = dim;
  j["passed"] = passed;
  j["constants"] = {
      {"lambda_m", lambda_m},
      {"lambda_M", lambda_M},
      {"cm_prime", cm_prime},
      {"lambda_m_numeric", lambda_m_numeric},
      {"lambda_M_numeric", lambda_M_numeric},
      {"cm_prime_numeric", cm_prime_numeric},
      {"analytic_lambda_m", analytic_lambda_m},
      {"analytic_lambda_M", analytic_lambda_M},
      {"analytic_cm_prime", analytic_cm_prime},
  };
  j["rate"] = {
      {"alpha_star", alpha_star}, {"epsilon", epsilon}, {"kappa", kappa},
      {"delta", delta},           {"lambda", lambda},   {"big_c", big_c},
  };
  j["residuals"] = {
      {"d_symmetric", residuals.d_symmetric},
      {"h_skew", residuals.h_skew},
      {"php_zero", residuals.php_zero},
      {"sigma_commutes", residuals.sigma_commutes},
  };
  j["tolerances"] = {
      {"d_symmetric", tolerances.d_symmetric},
      {"h_skew", tolerances.h_skew},
      {"php_zero", tolerances.php_zero},
      {"sigma_commutes", tolerances.sigma_commutes},
  };
  j["conditions"] = {
      {"dissipative_gap", condition_gap_ok},
      {"stirring", condition_stirring_ok},
      {"kernel_escape", condition_escape_ok},
      {"boundedness", condition_bounded_ok},
      {"hypocoercive_applicable", hypocoercive_applicable},
  };
  j["warnings"] = {
      {"stationary_multiplicity", stationary_multiplicity_warning},
      {"kernel_boundary", kernel_boundary_warning},
      {"twist_ill_conditioned", twist_ill_conditioned},
  };
  j["kernel_dim"] = kernel_dim;
  j["sigma_min"] = sigma_min;
  j["sigma"] = detail::matrix_to_json(sigma);
  if (passed) {
    j["tmix_bound"] = {{"eps_1e-1", tmix_bound(1e-1)},
                       {"eps_1e-2", tmix_bound(1e-2)},
                       {"eps_1e-3", tmix_bound(1e-3)}};
  }
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& [alpha, lam] : alpha_trace) trace.push_back({alpha, lam});
  j["alpha_trace"] = std::move(trace);
  return j.dump(2);
}

}  // namespace hypomix
