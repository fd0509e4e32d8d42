#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypomix/gns.hpp"
#include "hypomix/lindblad.hpp"
#include "hypomix/types.hpp"

namespace hypomix {

/// Orthogonal projector onto the kernel of the (symmetrized) dissipative
/// part, built on the traceless coordinates of a frame. kernel_dim counts
/// the identity direction as well, so pure dephasing on N qubits reports
/// 2^N while the traceless block contributes 2^N - 1 columns.
struct KernelProjector {
  SuperOpMatrix projector;   // traceless coordinates
  Matrix kernel_basis;       // orthonormal columns spanning ker cap traceless
  Matrix complement_basis;   // orthonormal columns of the orthogonal range
  int kernel_dim = 0;        // including the identity direction
  int traceless_kernel_dim = 0;
  double kernel_tol = 0.0;
  double symmetry_residual = 0.0;  // ||D - D*||_max of the input
  bool symmetry_ok = true;
  bool boundary_warning = false;   // eigenvalue within 10x of kernel_tol
};

KernelProjector kernel_projector(const SuperOpMatrix& dissipator);

/// Smallest decay rate of the symmetrized dissipative part outside its
/// kernel: the largest lambda_m with -Re<D A, A> >= lambda_m ||(I-P)A||^2 on
/// the traceless sector. +infinity when the kernel is everything.
double dissipative_gap(const SuperOpMatrix& dissipator,
                       const KernelProjector& proj);

/// Smallest eigenvalue of (H P)*(H P) on ker cap traceless: the largest
/// lambda_M with ||H P A||^2 >= lambda_M ||P A||^2. +infinity when the
/// traceless kernel is empty.
double stirring_gap(const SuperOpMatrix& hamiltonian_part,
                    const KernelProjector& proj);

/// Spectral norm of P H P: zero exactly when the Hamiltonian flow maps the
/// kernel entirely into its orthogonal complement.
double php_residual(const SuperOpMatrix& hamiltonian_part,
                    const KernelProjector& proj);

/// C_M' = ||H (I-P)||_op + ||D||_op, each norm restricted to the range of
/// I-P (largest singular value of the compressed block). Guarantees
/// ||H (I-P) A|| + ||D A|| <= C_M' ||(I-P) A||.
double boundedness_constant(const SuperOpMatrix& hamiltonian_part,
                            const SuperOpMatrix& dissipator,
                            const KernelProjector& proj);

/// The auxiliary twist operator (alpha I + (HP)*(HP))^{-1} (HP)*, computed
/// with a positive-definite solve.
SuperOpMatrix build_twist_operator(const SuperOpMatrix& hamiltonian_part,
                                   const KernelProjector& proj, double alpha);

/// Condition-number estimate of the twist solve, (alpha + smax(HP)^2)/alpha.
double twist_condition_estimate(const SuperOpMatrix& hamiltonian_part,
                                const KernelProjector& proj, double alpha);

/// The twisted-norm functional 1/2 ||A||^2 - eps Re<T A, A> evaluated on
/// traceless coordinates; eps must lie in [0, 1).
double lyapunov_value(const Vector& coords, double eps,
                      const SuperOpMatrix& twist);

struct BoundConstants {
  double epsilon;
  double kappa;
  double delta;
  double lambda;
  double big_c;
};

/// Explicit convergence constants from the three certified quantities and a
/// twist weight alpha, with C_M(alpha) = cm_prime / (2 sqrt(alpha)):
///   eps    = 1/2 min{ lambda_m lambda_M / ((alpha+lambda_M)(1+C_M)^2), 1 }
///   kappa  = min{ lambda_m / 4, (eps/3) lambda_M / (alpha+lambda_M) }
///   delta  = min{ (4/3) lambda_M / ((alpha+lambda_M)(1+C_M)), 1 }
///   lambda = kappa / (1+eps),  C = sqrt((1+eps)/(1-eps)).
BoundConstants bound_from_constants(double lambda_m, double lambda_M,
                                    double cm_prime, double alpha);

struct AlphaSearch {
  double alpha_star = 0.0;
  std::vector<std::pair<double, double>> trace;  // (alpha, lambda) grid
};

/// Maximizes lambda(alpha) over a 65-point logarithmic grid on
/// [lambda_M/100, 100 lambda_M] followed by golden-section refinement;
/// ties break toward smaller alpha.
AlphaSearch optimize_alpha(double lambda_m, double lambda_M, double cm_prime);

/// (1/lambda) log(C ||sigma^{-1}||_inf / eps_target), clamped at zero.
/// Requires full-rank sigma.
double mixing_time_bound(double lambda, double big_c, const Matrix& sigma,
                         double eps_target);

/// The full certification record. Operative constants are the validated
/// analytic values when the model carries them, otherwise the tight
/// numerics; the raw numerics are always recorded alongside.
struct HypoCertificate {
  std::string model_name;
  int dim = 0;

  double lambda_m = 0.0;
  double lambda_M = 0.0;
  double cm_prime = 0.0;
  double lambda_m_numeric = 0.0;
  double lambda_M_numeric = 0.0;
  double cm_prime_numeric = 0.0;
  bool analytic_lambda_m = false;
  bool analytic_lambda_M = false;
  bool analytic_cm_prime = false;

  double alpha_star = 0.0;
  double epsilon = 0.0;
  double kappa = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  double big_c = 0.0;

  struct Residuals {
    double d_symmetric = 0.0;
    double h_skew = 0.0;
    double php_zero = 0.0;
    double sigma_commutes = 0.0;
  } residuals;
  struct Tolerances {
    double d_symmetric = 0.0;
    double h_skew = 0.0;
    double php_zero = 0.0;
    double sigma_commutes = 0.0;
  } tolerances;

  bool condition_gap_ok = false;        // dissipative gap positive, D symmetric
  bool condition_stirring_ok = false;   // H skew, stirring gap positive
  bool condition_escape_ok = false;     // PHP residual below tolerance
  bool condition_bounded_ok = false;    // C_M' finite
  bool hypocoercive_applicable = true;  // nontrivial kernel and complement
  bool stationary_multiplicity_warning = false;
  bool kernel_boundary_warning = false;
  bool twist_ill_conditioned = false;
  bool passed = false;

  int kernel_dim = 0;
  Matrix sigma;
  double sigma_min = 0.0;

  std::vector<std::pair<double, double>> alpha_trace;

  double cm_alpha(double alpha) const;
  /// Mixing-time upper bound at the given trace-distance target.
  double tmix_bound(double eps_target) const;

  std::string to_json() const;  // schema_version 1, every value + tolerance
};

/// Runs the full pipeline: stationary state, frame, generator matrices,
/// kernel projector, the four certified quantities, alpha optimization and
/// the convergence constants. Condition failures produce a certificate with
/// passed = false and populated residuals rather than an exception.
HypoCertificate certify(const LindbladModel& model);

}  // namespace hypomix
