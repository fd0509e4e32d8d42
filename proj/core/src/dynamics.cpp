#include "hypomix/dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hypomix {

namespace {

constexpr double kEnvelopeSlack = 1e-7;

Matrix vec_to_matrix(const Vector& v, Eigen::Index d) {
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

Vector matrix_to_vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

void append_csv_value(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

Matrix propagator(const Matrix& generator, double t) {
  if (t < 0) throw DomainError("propagation time must be nonnegative");
  if (generator.rows() != generator.cols()) {
    throw DimensionError("generator must be square");
  }
  return (t * generator).exp();
}

Vector propagate(const Matrix& generator, const Vector& initial, double t) {
  if (initial.size() != generator.rows()) {
    throw DimensionError("initial vector length differs from generator");
  }
  return propagator(generator, t) * initial;
}

Vector propagate(const SuperOpMatrix& generator, const Vector& initial,
                 double t) {
  return propagate(generator.matrix, initial, t);
}

std::vector<double> log_time_grid(double t_min, double t_max, int n) {
  if (!(t_min > 0) || !(t_max > t_min) || n < 2) {
    throw DomainError("time grid needs 0 < t_min < t_max and n >= 2");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  const double lo = std::log10(t_min), hi = std::log10(t_max);
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        std::pow(10.0, lo + (hi - lo) * double(i) / double(n - 1));
  }
  return out;
}

Trajectory heisenberg_decay(const LindbladModel& model,
                            const HypoCertificate& cert, const Matrix& a0,
                            const std::vector<double>& times) {
  if (!cert.passed) {
    throw DomainError("envelope tracking needs a passed certificate");
  }
  const FramePtr frame = GnsFrame::build(cert.sigma);
  const HeisenbergSuperops parts = build_heisenberg(model, frame);
  const Matrix lt = restrict_traceless(parts.hamiltonian_part).matrix +
                    restrict_traceless(parts.dissipative_part).matrix;
  const SuperOpMatrix twist = build_twist_operator(
      restrict_traceless(parts.hamiltonian_part),
      kernel_projector(restrict_traceless(parts.dissipative_part)),
      cert.alpha_star);

  // Center: observables are tracked as fluctuations around equilibrium.
  const Matrix centered =
      a0 - gns_inner(*frame, Matrix::Identity(model.dim, model.dim), a0) *
               Matrix::Identity(model.dim, model.dim);
  const Vector c0 = frame->traceless_coords(centered);
  const double norm0 = c0.norm();

  Trajectory traj;
  traj.points.reserve(times.size());
  for (double t : times) {
    const Vector ct = propagate(lt, c0, t);
    TrajectoryPoint pt;
    pt.time = t;
    pt.gns_norm = ct.norm();
    pt.lyapunov = lyapunov_value(ct, cert.epsilon, twist);
    pt.envelope_value = cert.big_c * std::exp(-cert.lambda * t) * norm0;
    pt.envelope_ok = pt.gns_norm <= pt.envelope_value + kEnvelopeSlack * std::max(1.0, norm0);
    traj.points.push_back(pt);
  }
  return traj;
}

Trajectory schrodinger_decay(const LindbladModel& model,
                             const HypoCertificate& cert, const Matrix& rho0,
                             const std::vector<double>& times) {
  if (!cert.passed) {
    throw DomainError("envelope tracking needs a passed certificate");
  }
  if (rho0.rows() != model.dim || rho0.cols() != model.dim) {
    throw DimensionError("initial state dimension differs from model");
  }
  if (hermiticity_defect(rho0) > 1e-8 ||
      std::abs(rho0.trace() - Complex(1.0)) > 1e-8) {
    throw DomainError("initial state must be Hermitian with unit trace");
  }

  const FramePtr frame = GnsFrame::build(cert.sigma);
  Eigen::SelfAdjointEigenSolver<Matrix> es(cert.sigma);
  const Matrix sigma_inv = es.eigenvectors() *
                           es.eigenvalues().cwiseInverse().asDiagonal().toDenseMatrix().cast<Complex>() *
                           es.eigenvectors().adjoint();
  const double weight = gns_norm(*frame, sigma_inv * rho0);

  const Matrix gen = schrodinger_vec_generator(model);
  const Vector v0 = matrix_to_vec(rho0);

  Trajectory traj;
  traj.points.reserve(times.size());
  for (double t : times) {
    const Matrix rho_t = vec_to_matrix(propagate(gen, v0, t), model.dim);
    TrajectoryPoint pt;
    pt.time = t;
    pt.trace_distance = trace_norm(rho_t - cert.sigma);
    pt.envelope_value = cert.big_c * weight * std::exp(-cert.lambda * t);
    pt.envelope_ok =
        pt.trace_distance <= pt.envelope_value + kEnvelopeSlack * std::max(1.0, weight);
    traj.points.push_back(pt);
  }
  return traj;
}

Matrix random_pure_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector psi(dim);
  for (int i = 0; i < dim; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
  psi.normalize();
  return psi * psi.adjoint();
}

double empirical_mixing_time(const LindbladModel& model, double eps_target,
                             const std::vector<double>& times,
                             std::uint64_t seed, int random_probes) {
  if (!(eps_target > 0)) throw DomainError("accuracy target must be positive");
  if (!exact_spectrum(model).primitive) {
    throw DomainError("mixing time is undefined for non-primitive dynamics");
  }
  const Matrix sigma = stationary_state(model).sigma;
  const Eigen::Index d = model.dim;

  std::vector<Matrix> probes;
  for (Eigen::Index k = 0; k < d; ++k) {
    Matrix basis = Matrix::Zero(d, d);
    basis(k, k) = 1.0;
    probes.push_back(basis);
  }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < random_probes; ++k) {
    probes.push_back(random_pure_state(static_cast<int>(d), rng));
  }

  const Matrix gen = schrodinger_vec_generator(model);
  const auto max_distance = [&](double t) {
    const Matrix expm = propagator(gen, t);
    double worst = 0.0;
    for (const Matrix& rho : probes) {
      const Matrix rho_t = vec_to_matrix(expm * matrix_to_vec(rho), d);
      worst = std::max(worst, trace_norm(rho_t - sigma));
    }
    return worst;
  };

  if (max_distance(0.0) <= eps_target) return 0.0;
  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  double last = std::numeric_limits<double>::quiet_NaN();
  for (double t : sorted) {
    last = max_distance(t);
    if (last <= eps_target) return t;
  }
  throw HorizonError("accuracy target not reached within the time grid", last);
}

std::string Trajectory::to_csv() const {
  std::string out =
      "time,gns_norm,trace_distance,lyapunov,envelope_value,envelope_ok\n";
  for (const TrajectoryPoint& pt : points) {
    append_csv_value(out, pt.time);
    out += ',';
    append_csv_value(out, pt.gns_norm);
    out += ',';
    append_csv_value(out, pt.trace_distance);
    out += ',';
    append_csv_value(out, pt.lyapunov);
    out += ',';
    append_csv_value(out, pt.envelope_value);
    out += ',';
    out += pt.envelope_ok ? "1" : "0";
    out += '\n';
  }
  return out;
}

}  // namespace hypomix
