#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypomix/gns.hpp"
#include "hypomix/types.hpp"

namespace hypomix {

/// Closed-form constants a model generator may attach. The certifier
/// validates every one of them against its own tight numerics before use:
/// lambda_m and sigma as equalities, lambda_M as a lower bound, cm_prime as
/// an upper bound.
struct AnalyticConstants {
  std::optional<double> lambda_m;
  std::optional<double> lambda_M;
  std::optional<double> cm_prime;
};

/// A finite-dimensional quantum Markov generator: Hamiltonian plus jump
/// operators. Evolution of observables (Heisenberg picture) is
///   L A = i[H, A] + sum_j ( V_j^dag [A, V_j] + [V_j^dag, A] V_j ),
/// and states evolve under the Hilbert-Schmidt dual L*.
struct LindbladModel {
  int dim = 0;
  Matrix hamiltonian;
  std::vector<Matrix> jumps;
  std::optional<Matrix> sigma_hint;
  std::string name;
  std::map<std::string, double> params;
  AnalyticConstants analytic;
};

/// Validates dimensions and Hermiticity of the Hamiltonian (1e-10).
void validate_model(const LindbladModel& model);

/// Dense actions of the generator pieces.
Matrix apply_hamiltonian_part(const LindbladModel& model, const Matrix& a);
Matrix apply_dissipator(const LindbladModel& model, const Matrix& a);
Matrix apply_heisenberg(const LindbladModel& model, const Matrix& a);
Matrix apply_schrodinger(const LindbladModel& model, const Matrix& rho);

/// Column-stacked d^2 x d^2 matrix representations.
Matrix heisenberg_vec_generator(const LindbladModel& model);
Matrix schrodinger_vec_generator(const LindbladModel& model);

struct HeisenbergSuperops {
  SuperOpMatrix hamiltonian_part;  // A -> i[H, A]
  SuperOpMatrix dissipative_part;  // A -> sum_j V^dag[A,V] + [V^dag,A]V
};

/// Both generator pieces as matrices in the frame's coordinates.
HeisenbergSuperops build_heisenberg(const LindbladModel& model,
                                    const FramePtr& frame);

/// The state-picture generator in the same coordinates (the Hilbert-Schmidt
/// dual of the Heisenberg generator).
SuperOpMatrix build_schrodinger(const LindbladModel& model,
                                const FramePtr& frame);

struct StationaryState {
  Matrix sigma;
  int kernel_dim = 1;              // of the vectorized state generator
  bool multiplicity_warning = false;
  double residual = 0.0;           // ||L* sigma||_max
};

/// Stationary state from the null space of the vectorized state generator.
/// With several null directions, returns the kernel element closest to the
/// maximally mixed state (after Hermitian/PSD repair) and sets the warning.
/// A provided sigma_hint is verified instead of solving.
StationaryState stationary_state(const LindbladModel& model);

struct SpectralReport {
  std::vector<Complex> eigenvalues;  // of the Heisenberg generator
  double gap = 0.0;                  // min -Re over eigenvalues away from zero
  int kernel_dim = 0;
  bool primitive = false;
};

/// Full dense spectrum of the Heisenberg generator; requires d^2 <= 4096.
SpectralReport exact_spectrum(const LindbladModel& model);

/// Model JSON: {"name", "dim" | "n_qubits", "hamiltonian": <pauli|dense>,
/// "jumps": [...], "sigma": optional dense, "params": {...}}. Pauli sums are
/// arrays of {"coeff": [re, im], "string": "..."}; dense operators are
/// {"dim": d, "data": [[re, im] x d^2]} in row-major order.
LindbladModel model_from_json(const std::string& text);
std::string model_to_json(const LindbladModel& model);

}  // namespace hypomix
