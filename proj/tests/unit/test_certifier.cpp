#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <hypomix/certifier.hpp>
#include <hypomix/models.hpp>
#include <hypomix/pauli.hpp>
#include <nlohmann/json.hpp>

#include "test_helpers.hpp"

using namespace hypomix;
using testing::diff;
using testing::random_operator;

namespace {

struct Pipeline {
  FramePtr frame;
  SuperOpMatrix ham;   // traceless
  SuperOpMatrix dis;   // traceless
  KernelProjector proj;
};

Pipeline build_pipeline(const LindbladModel& model) {
  const auto st = stationary_state(model);
  auto frame = GnsFrame::build(st.sigma);
  auto parts = build_heisenberg(model, frame);
  Pipeline p{frame, restrict_traceless(parts.hamiltonian_part),
             restrict_traceless(parts.dissipative_part), {}};
  p.proj = kernel_projector(p.dis);
  return p;
}

/// Independent stirring-gap oracle for dephasing models with a flat
/// equilibrium: the Gram matrix of [H, P_j] over all non-identity Z-strings
/// P_j, assembled from dense commutators and normalized Hilbert-Schmidt
/// inner products only.
double zstring_stirring_oracle(const Matrix& hamiltonian, int n_qubits) {
  const double dim = double(hamiltonian.rows());
  std::vector<Matrix> commutators;
  for (std::uint64_t z = 1; z < (1ull << n_qubits); ++z) {
    const Matrix p = PauliString(n_qubits, 0, z).to_dense();
    commutators.push_back(hamiltonian * p - p * hamiltonian);
  }
  const auto k = static_cast<Eigen::Index>(commutators.size());
  Matrix gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      gram(i, j) = (commutators[static_cast<std::size_t>(i)].adjoint() *
                    commutators[static_cast<std::size_t>(j)])
                       .trace() /
                   dim;
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  return es.eigenvalues().minCoeff();
}

LindbladModel zstring_hamiltonian_model(double gamma) {
  LindbladModel model;
  model.name = "zz_with_dephasing";
  model.dim = 4;
  model.hamiltonian = PauliString::from_label("ZZ").to_dense();
  model.jumps = dephasing_jumps(2, gamma);
  return model;
}

LindbladModel depolarizing_qubit(double gamma) {
  LindbladModel model;
  model.name = "depolarizing";
  model.dim = 2;
  model.hamiltonian = PauliString::from_label("X").to_dense();
  const double s = std::sqrt(gamma / 2.0);
  model.jumps = {s * PauliString::from_label("X").to_dense(),
                 s * PauliString::from_label("Y").to_dense(),
                 s * PauliString::from_label("Z").to_dense()};
  return model;
}

Vector random_traceless_coords(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v;
}

}  // namespace

TEST_SUITE("certifier") {

TEST_CASE("kernel projector counts dephasing fixed points") {
  for (int n = 2; n <= 3; ++n) {
    const auto p = build_pipeline(tfim_dephasing(n, 1.0, 1.0));
    CHECK(p.proj.kernel_dim == (1 << n));
    CHECK(p.proj.traceless_kernel_dim == (1 << n) - 1);
    CHECK(p.proj.symmetry_ok);

    const Matrix& pm = p.proj.projector.matrix;
    CHECK(max_abs(pm * pm - pm) < 1e-9);
    CHECK(max_abs(pm - pm.adjoint()) < 1e-9);
    CHECK(max_abs(p.dis.matrix * pm) < 1e-9 * max_abs(p.dis.matrix));

    // orthogonal projection never grows vectors
    std::mt19937_64 rng(19);
    const Matrix qperp =
        Matrix::Identity(pm.rows(), pm.cols()) - pm;
    for (int trial = 0; trial < 20; ++trial) {
      const Vector v = random_traceless_coords(pm.rows(), rng);
      CHECK((pm * v).norm() <= v.norm() + 1e-12);
      CHECK((qperp * v).norm() <= v.norm() + 1e-12);
    }
  }
}

TEST_CASE("near-kernel eigenvalues raise the boundary warning") {
  // two dephasing channels nine orders of magnitude apart: the weak one
  // lands within a decade of the kernel tolerance
  LindbladModel model;
  model.name = "lopsided_dephasing";
  model.dim = 4;
  model.hamiltonian = Matrix::Zero(4, 4);
  const double strong = 1.0, weak = 5e-9;
  model.jumps = {
      std::sqrt(strong / 2.0) * PauliString::from_label("ZI").to_dense(),
      std::sqrt(weak / 2.0) * PauliString::from_label("IZ").to_dense()};
  model.sigma_hint = Matrix::Identity(4, 4) / 4.0;
  const auto frame = GnsFrame::build(*model.sigma_hint);
  const auto parts = build_heisenberg(model, frame);
  const auto proj = kernel_projector(restrict_traceless(parts.dissipative_part));
  CHECK(proj.boundary_warning);

  const auto clean = build_pipeline(tfim_dephasing(2, 1.0, 1.0));
  CHECK_FALSE(clean.proj.boundary_warning);
}

TEST_CASE("projector keeps exactly the diagonal of the toy qubit") {
  std::mt19937_64 rng(51);
  const auto model = toy_qubit();
  const auto p = build_pipeline(model);
  CHECK(p.proj.kernel_dim == 2);

  const Matrix a = random_operator(2, rng);
  const Matrix id = Matrix::Identity(2, 2);
  const Complex mean = gns_inner(*p.frame, id, a);
  const Vector projected =
      p.proj.projector.matrix * p.frame->traceless_coords(a - mean * id);
  const Matrix pa = p.frame->from_traceless_coords(projected) + mean * id;
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = a(0, 0);
  expected(1, 1) = a(1, 1);
  CHECK(diff(pa, expected) < 1e-10);
}

TEST_CASE("zero dissipator projects onto everything") {
  LindbladModel model;
  model.name = "unitary_only";
  model.dim = 2;
  model.hamiltonian = PauliString::from_label("X").to_dense();
  const auto p = build_pipeline(model);
  CHECK(diff(p.proj.projector.matrix, Matrix::Identity(3, 3)) < 1e-12);
  CHECK(boundedness_constant(p.ham, p.dis, p.proj) == 0.0);
}

TEST_CASE("dissipative gap of dephasing") {
  for (const double gamma : {0.7, 1.0}) {
    const auto p = build_pipeline(tfim_dephasing(2, 1.0, gamma));
    CHECK(std::abs(dissipative_gap(p.dis, p.proj) - 2 * gamma) < 1e-9);
  }
  const auto q = build_pipeline(qutrit(1.0, 2.0));
  CHECK(std::abs(dissipative_gap(q.dis, q.proj) - 3.0) < 1e-8);
}

TEST_CASE("stirring gap saturates the transverse field value") {
  for (const double h : {0.5, 1.0}) {
    for (int n = 2; n <= 3; ++n) {
      const auto model = tfim_dephasing(n, h, 1.0);
      const auto p = build_pipeline(model);
      const double numeric = stirring_gap(p.ham, p.proj);
      CHECK(std::abs(numeric - 4 * h * h) < 1e-8 * 4 * h * h);
      const double oracle = zstring_stirring_oracle(model.hamiltonian, n);
      CHECK(std::abs(numeric - oracle) < 1e-8 * std::max(1.0, oracle));
    }
  }
}

TEST_CASE("stirring gap of the coupled chain stays above the field value") {
  const auto model = heisenberg_dephasing(3, 1.0, 1.0, 1.0, 1.0, 1.0);
  const auto p = build_pipeline(model);
  CHECK(stirring_gap(p.ham, p.proj) >= 4.0 - 1e-8);
}

TEST_CASE("stirring gap of walks equals twice the laplacian gap") {
  const auto c4 = quantum_walk_dephasing(cycle_adjacency(4), 1.0);
  const auto p4 = build_pipeline(c4);
  CHECK(std::abs(stirring_gap(p4.ham, p4.proj) - 4.0) < 1e-8);

  const auto k4 = quantum_walk_dephasing(complete_adjacency(4), 1.0);
  const auto pk = build_pipeline(k4);
  CHECK(std::abs(stirring_gap(pk.ham, pk.proj) - 8.0) < 1e-8);
}

TEST_CASE("kernel escape residual") {
  const auto tf = build_pipeline(tfim_dephasing(2, 1.0, 1.0));
  CHECK(php_residual(tf.ham, tf.proj) < 1e-10);

  const auto toy = build_pipeline(toy_qubit());
  CHECK(php_residual(toy.ham, toy.proj) < 1e-12);

  // a pure Z-string hamiltonian never leaves the dephasing kernel
  const auto zz = build_pipeline(zstring_hamiltonian_model(1.0));
  CHECK(php_residual(zz.ham, zz.proj) < 1e-12);
  CHECK(stirring_gap(zz.ham, zz.proj) < 1e-12);
  const auto cert = certify(zstring_hamiltonian_model(1.0));
  CHECK_FALSE(cert.passed);
  CHECK_FALSE(cert.condition_stirring_ok);
}

TEST_CASE("boundedness constant stays below the closed form") {
  for (int n = 2; n <= 3; ++n) {
    const double h = 1.0, gamma = 1.0;
    const auto model = tfim_dephasing(n, h, gamma);
    const auto p = build_pipeline(model);
    const double numeric = boundedness_constant(p.ham, p.dis, p.proj);
    const double closed = 2.0 * ((n - 1) + n * h) + 2.0 * n * gamma;
    CHECK(numeric <= closed + 1e-9);
    CHECK(numeric > 0.0);
  }
}

TEST_CASE("boundedness inequality holds sample-wise") {
  std::mt19937_64 rng(57);
  const auto p = build_pipeline(tfim_dephasing(2, 1.0, 1.0));
  const double cm = boundedness_constant(p.ham, p.dis, p.proj);
  const Matrix qperp =
      Matrix::Identity(p.ham.matrix.rows(), p.ham.matrix.cols()) -
      p.proj.projector.matrix;
  for (int trial = 0; trial < 200; ++trial) {
    const Vector a = random_traceless_coords(p.ham.matrix.rows(), rng);
    const Vector off = qperp * a;
    const double lhs =
        (p.ham.matrix * off).norm() + (p.dis.matrix * a).norm();
    CHECK(lhs <= cm * off.norm() + 1e-9);
  }
}

TEST_CASE("twist operator lands in the kernel and obeys its bounds") {
  std::mt19937_64 rng(61);
  for (const auto& model :
       {toy_qubit(), qutrit(1.0, 1.0), tfim_dephasing(2, 1.0, 1.0)}) {
    const auto p = build_pipeline(model);
    const double lam_M = stirring_gap(p.ham, p.proj);
    const Matrix qperp =
        Matrix::Identity(p.ham.matrix.rows(), p.ham.matrix.cols()) -
        p.proj.projector.matrix;
    for (const double scale : {0.1, 1.0, 10.0}) {
      const double alpha = scale * lam_M;
      const auto twist = build_twist_operator(p.ham, p.proj, alpha);
      CHECK(max_abs(twist.matrix - p.proj.projector.matrix * twist.matrix) <
            1e-9);
      for (int trial = 0; trial < 500; ++trial) {
        const Vector a = random_traceless_coords(p.ham.matrix.rows(), rng);
        const double off_norm = (qperp * a).norm();
        CHECK((twist.matrix * a).norm() <=
              off_norm / (2.0 * std::sqrt(alpha)) + 1e-9);
        CHECK((p.ham.matrix * (twist.matrix * a)).norm() <= off_norm + 1e-9);
      }
    }
  }
}

TEST_CASE("twisted norm functional") {
  std::mt19937_64 rng(67);
  const auto p = build_pipeline(qutrit(1.0, 1.0));
  const auto cert = certify(qutrit(1.0, 1.0));
  const auto twist = build_twist_operator(p.ham, p.proj, cert.alpha_star);

  const Vector zero = Vector::Zero(p.ham.matrix.rows());
  CHECK(lyapunov_value(zero, 0.3, twist) == 0.0);

  for (int trial = 0; trial < 100; ++trial) {
    const Vector a = random_traceless_coords(p.ham.matrix.rows(), rng);
    const double half = 0.5 * a.squaredNorm();
    CHECK(lyapunov_value(a, 0.0, twist) == half);
    const double value = lyapunov_value(a, cert.epsilon, twist);
    CHECK(value >= (1.0 - cert.epsilon) * half - 1e-9);
    CHECK(value <= (1.0 + cert.epsilon) * half + 1e-9);
  }
  CHECK_THROWS_AS(lyapunov_value(zero, 1.0, twist), DomainError);
}

TEST_CASE("closed-form constants regression") {
  // frozen from an independent pre-build evaluation of the formulas
  const auto bc = bound_from_constants(2.0, 4.0, 10.0, 4.0);
  CHECK(std::abs(bc.epsilon - 0.04081632653061224) < 1e-12);
  CHECK(std::abs(bc.kappa - 0.006802721088435374) < 1e-12);
  CHECK(std::abs(bc.delta - 0.19047619047619047) < 1e-12);
  CHECK(std::abs(bc.lambda - 0.006535947712418301) < 1e-12);
  CHECK(std::abs(bc.big_c - 1.0416843970122254) < 1e-12);
}

TEST_CASE("constants respond monotonically to the boundedness constant") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double lm = u(rng), lM = u(rng), cm = u(rng), alpha = u(rng);
    const auto base = bound_from_constants(lm, lM, cm, alpha);
    const auto doubled = bound_from_constants(lm, lM, 2 * cm, alpha);
    if (base.epsilon < 0.5) {
      CHECK(doubled.epsilon < base.epsilon);  // strict once off the cap
    } else {
      CHECK(doubled.epsilon <= base.epsilon);
    }
    CHECK(doubled.lambda <= base.lambda + 1e-15);

    CHECK(base.epsilon > 0.0);
    CHECK(base.epsilon <= 0.5);
    CHECK(base.big_c > 1.0);
    CHECK(base.big_c <= std::sqrt(3.0) + 1e-12);
  }
  CHECK_THROWS_AS(bound_from_constants(0.0, 1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(bound_from_constants(1.0, 1.0, 1.0, -1.0), DomainError);
}

TEST_CASE("alpha optimization beats the natural grid point") {
  for (const auto& [lm, lM, cm] :
       {std::tuple{1.5, 1.0, 11.0}, std::tuple{2.0, 4.0, 10.0},
        std::tuple{0.1, 7.0, 30.0}}) {
    const auto search = optimize_alpha(lm, lM, cm);
    CHECK(search.alpha_star >= lM / 100.0 * (1 - 1e-12));
    CHECK(search.alpha_star <= lM * 100.0 * (1 + 1e-12));
    CHECK(search.trace.size() == 65);

    const double at_star =
        bound_from_constants(lm, lM, cm, search.alpha_star).lambda;
    CHECK(at_star >= bound_from_constants(lm, lM, cm, lM).lambda);
    for (const auto& [alpha, lambda] : search.trace) {
      CHECK(at_star >= lambda - 1e-15);
    }
  }
}

TEST_CASE("mixing time bound formula") {
  Matrix sigma = Matrix::Zero(2, 2);
  sigma(0, 0) = 0.875;
  sigma(1, 1) = 0.125;  // ||sigma^{-1}||_inf = 8
  CHECK(std::abs(mixing_time_bound(0.5, 2.0, sigma, 0.01) -
                 14.755517816455745) < 1e-9);

  // flat states reproduce the N + log(1/eps) structure
  for (int n = 2; n <= 4; ++n) {
    const int d = 1 << n;
    const Matrix flat = Matrix::Identity(d, d) / double(d);
    const double t = mixing_time_bound(1.0, 1.5, flat, 0.01);
    CHECK(std::abs(t - (std::log(1.5) + n * std::log(2.0) + std::log(100.0))) <
          1e-12);
  }

  CHECK(mixing_time_bound(0.5, 2.0, sigma, 1.0) > 0.0);
  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  CHECK_THROWS_AS(mixing_time_bound(0.5, 2.0, singular, 0.01), DomainError);
}

TEST_CASE("certify the qutrit") {
  const auto cert = certify(qutrit(1.0, 1.0));
  CHECK(cert.passed);
  CHECK(std::abs(cert.lambda_m - 1.5) < 1e-8);
  CHECK(std::abs(cert.lambda_M - 1.0) < 1e-12);
  CHECK(cert.analytic_lambda_M);
  // the tight numeric stirring gap is strictly larger than the carried bound
  CHECK(std::abs(cert.lambda_M_numeric - 8.0 / 3.0) < 1e-8);
  CHECK(cert.big_c <= std::sqrt(3.0) + 1e-12);
  CHECK(cert.residuals.php_zero < 1e-10);
  CHECK(cert.residuals.d_symmetric <= cert.tolerances.d_symmetric);
  CHECK(cert.lambda <= cert.lambda_m / 4.0 + 1e-15);
  CHECK(cert.lambda <=
        cert.epsilon / (3.0 * (1.0 + cert.epsilon)) + 1e-15);
}

TEST_CASE("certified rate never exceeds the exact gap") {
  const std::vector<LindbladModel> zoo = {
      toy_qubit(),
      qutrit(1.0, 1.0),
      tfim_dephasing(2, 1.0, 1.0),
      tfim_dephasing(3, 1.0, 1.0),
      heisenberg_dephasing(3, 1.0, 1.0, 1.0, 1.0, 1.0),
      quantum_walk_dephasing(cycle_adjacency(4), 1.0)};
  for (const auto& model : zoo) {
    const auto cert = certify(model);
    CHECK(cert.passed);
    const auto spectrum = exact_spectrum(model);
    CHECK(cert.lambda <= spectrum.gap + 1e-9);
  }
}

TEST_CASE("certified inequalities hold sample-wise") {
  std::mt19937_64 rng(73);
  for (const auto& model : {qutrit(1.0, 1.0), tfim_dephasing(2, 1.0, 1.0)}) {
    const auto cert = certify(model);
    const auto p = build_pipeline(model);
    const Matrix qperp =
        Matrix::Identity(p.ham.matrix.rows(), p.ham.matrix.cols()) -
        p.proj.projector.matrix;
    for (int trial = 0; trial < 500; ++trial) {
      const Vector a = random_traceless_coords(p.ham.matrix.rows(), rng);
      const double diss =
          -((p.dis.matrix * a).dot(a)).real();
      CHECK(diss >= cert.lambda_m * (qperp * a).squaredNorm() - 1e-9);
      const Vector pa = p.proj.projector.matrix * a;
      CHECK((p.ham.matrix * pa).squaredNorm() >=
            cert.lambda_M * pa.squaredNorm() - 1e-9);
    }
  }
}

TEST_CASE("failures are reported, not thrown") {
  // no stirring field: the kernel is invariant, certification must fail
  const auto cert = certify(tfim_dephasing(3, 0.0, 1.0));
  CHECK_FALSE(cert.passed);
  CHECK_FALSE(cert.condition_stirring_ok);
  CHECK(cert.lambda_M_numeric < 1e-9);
  CHECK(cert.condition_gap_ok);  // the dissipative side is intact
  CHECK(std::isnan(cert.lambda));

  // a coercive dissipator leaves nothing for the flow to stir
  const auto dep = certify(depolarizing_qubit(1.0));
  CHECK_FALSE(dep.passed);
  CHECK_FALSE(dep.hypocoercive_applicable);
  CHECK(dep.kernel_dim == 1);
}

TEST_CASE("analytic constants are validated against the numerics") {
  auto model = tfim_dephasing(2, 1.0, 1.0);
  model.analytic.lambda_m = 999.0;
  CHECK_THROWS_AS(certify(model), ModelError);

  auto model2 = tfim_dephasing(2, 1.0, 1.0);
  model2.analytic.lambda_M = 100.0;  // not a valid lower bound
  CHECK_THROWS_AS(certify(model2), ModelError);

  auto model3 = tfim_dephasing(2, 1.0, 1.0);
  model3.analytic.cm_prime = 0.001;  // not a valid upper bound
  CHECK_THROWS_AS(certify(model3), ModelError);
}

TEST_CASE("certificate serializes every ingredient") {
  const auto cert = certify(qutrit(1.0, 1.0));
  const auto j = nlohmann::json::parse(cert.to_json());
  CHECK(j["schema_version"] == 1);
  CHECK(j["passed"] == true);
  CHECK(std::abs(j["constants"]["lambda_m"].get<double>() - 1.5) < 1e-8);
  CHECK(std::abs(j["constants"]["lambda_M_numeric"].get<double>() -
                 8.0 / 3.0) < 1e-8);
  CHECK(j["rate"].contains("alpha_star"));
  CHECK(j["rate"].contains("lambda"));
  CHECK(j["residuals"].contains("php_zero"));
  CHECK(j["tolerances"].contains("php_zero"));
  CHECK(j["alpha_trace"].size() == 65);
  CHECK(j["tmix_bound"].contains("eps_1e-2"));
  const double tmix = j["tmix_bound"]["eps_1e-2"].get<double>();
  CHECK(std::abs(tmix - cert.tmix_bound(0.01)) < 1e-12);
}

}  // TEST_SUITE
