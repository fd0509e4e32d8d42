#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypomix/lindblad.hpp"
#include "hypomix/types.hpp"

namespace hypomix {

/// Single qubit with H = X and a single projector jump |0><0|; equilibrium
/// I/2. The closed 2x2 block on the off-diagonal sector makes every derived
/// quantity available in closed form (gap 1/2, dissipative decay e^{-t}).
LindbladModel toy_qubit();

/// Three-level system: H = omega(|1><2| + |2><1|), lowering jump
/// sqrt(3 gamma)|0><1| and raising jump sqrt(3 gamma / 2)|1><0|. Equilibrium
/// diag(1/2, 1/4, 1/4); dissipative gap exactly (3/2) gamma; the carried
/// stirring constant omega^2 is a certified lower bound (the tight value is
/// (8/3) omega^2).
LindbladModel qutrit(double omega, double gamma);

/// Transverse-field Ising chain with uniform dephasing, open boundaries:
/// H = sum Z_i Z_{i+1} + h sum X_i, jumps sqrt(gamma/2) Z_i. Carries
/// lambda_m = 2 gamma, lambda_M = 4 h^2 and
/// cm_prime = 2((N-1) + N h) + 2 N gamma.
LindbladModel tfim_dephasing(int n, double h, double gamma);

/// Heisenberg chain with uniform dephasing, open boundaries:
/// H = -sum (Jx XX + Jy YY + Jz ZZ) + h sum X_i. Carries lambda_m = 2 gamma,
/// lambda_M = 4 h^2 (lower bound) and the coefficient-1-norm boundedness
/// constant 2 ((N-1)(|Jx|+|Jy|+|Jz|) + N|h|) + 2 N gamma.
LindbladModel heisenberg_dephasing(int n, double jx, double jy, double jz,
                                   double h, double gamma);

/// Continuous-time quantum walk on a d-regular connected graph with 2^N
/// vertices, under uniform dephasing. The Hamiltonian is the adjacency
/// matrix; carries lambda_m = 2 gamma and lambda_M = 2 Delta with Delta the
/// Laplacian spectral gap (stored in params["delta"]).
LindbladModel quantum_walk_dephasing(const std::vector<std::vector<int>>& adjacency,
                                     double gamma);

/// Cycle and complete-graph adjacency helpers.
std::vector<std::vector<int>> cycle_adjacency(int vertices);
std::vector<std::vector<int>> complete_adjacency(int vertices);

/// Uniform dephasing jumps sqrt(gamma/2) Z_i on n qubits, so the dissipator
/// equals gamma sum_i (Z_i A Z_i - A).
std::vector<Matrix> dephasing_jumps(int n, double gamma);

/// Build a model by recipe name: "toy_qubit", "qutrit", "tfim",
/// "heisenberg", "walk". Walk recipes take the adjacency as a JSON row list
/// or the shorthand "cycle:N" / "complete:N".
LindbladModel recipe(const std::string& name,
                     const std::map<std::string, double>& params,
                     const std::string& adjacency = "");

}  // namespace hypomix
