#include "hypomix/models.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <queue>

#include <nlohmann/json.hpp>

#include "hypomix/pauli.hpp"

namespace hypomix {

namespace {

Matrix unit(int d, int i, int j) {
  Matrix e = Matrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

void require_chain_size(int n) {
  if (n < 2 || n > kMaxDenseQubits) {
    throw ModelError("chain length must be in [2, " +
                     std::to_string(kMaxDenseQubits) + "]");
  }
}

}  // namespace

std::vector<Matrix> dephasing_jumps(int n, double gamma) {
  if (gamma <= 0) throw ModelError("dephasing rate must be positive");
  std::vector<Matrix> jumps;
  jumps.reserve(static_cast<std::size_t>(n));
  const double scale = std::sqrt(gamma / 2.0);
  for (int i = 0; i < n; ++i) {
    jumps.push_back(scale * PauliString::single(n, i, 'Z').to_dense());
  }
  return jumps;
}

LindbladModel toy_qubit() {
  LindbladModel model;
  model.name = "toy_qubit";
  model.dim = 2;
  model.hamiltonian = PauliString::single(1, 0, 'X').to_dense();
  model.jumps = {unit(2, 0, 0)};
  model.sigma_hint = Matrix::Identity(2, 2) / 2.0;
  return model;
}

LindbladModel qutrit(double omega, double gamma) {
  if (omega == 0) throw ModelError("qutrit coupling omega must be nonzero");
  if (gamma <= 0) throw ModelError("qutrit rate gamma must be positive");
  LindbladModel model;
  model.name = "qutrit";
  model.dim = 3;
  model.params = {{"omega", omega}, {"gamma", gamma}};
  model.hamiltonian = omega * (unit(3, 1, 2) + unit(3, 2, 1));
  model.jumps = {std::sqrt(3.0 * gamma) * unit(3, 0, 1),
                 std::sqrt(1.5 * gamma) * unit(3, 1, 0)};
  Matrix sigma = Matrix::Zero(3, 3);
  sigma(0, 0) = 0.5;
  sigma(1, 1) = 0.25;
  sigma(2, 2) = 0.25;
  model.sigma_hint = sigma;
  model.analytic.lambda_m = 1.5 * gamma;
  model.analytic.lambda_M = omega * omega;
  return model;
}

LindbladModel tfim_dephasing(int n, double h, double gamma) {
  require_chain_size(n);
  if (gamma <= 0) throw ModelError("dephasing rate must be positive");
  PauliSum hamiltonian(n);
  for (int i = 0; i + 1 < n; ++i) {
    PauliString zz(n, 0, (1ull << i) | (1ull << (i + 1)));
    hamiltonian.add(1.0, zz);
  }
  for (int i = 0; i < n; ++i) {
    hamiltonian.add(h, PauliString::single(n, i, 'X'));
  }

  LindbladModel model;
  model.name = "tfim";
  model.dim = 1 << n;
  model.params = {{"n", double(n)}, {"h", h}, {"gamma", gamma}};
  model.hamiltonian = hamiltonian.to_dense();
  model.jumps = dephasing_jumps(n, gamma);
  model.sigma_hint = Matrix::Identity(model.dim, model.dim) / double(model.dim);
  model.analytic.lambda_m = 2.0 * gamma;
  model.analytic.lambda_M = 4.0 * h * h;
  model.analytic.cm_prime = 2.0 * ((n - 1) + n * std::abs(h)) + 2.0 * n * gamma;
  return model;
}

LindbladModel heisenberg_dephasing(int n, double jx, double jy, double jz,
                                   double h, double gamma) {
  require_chain_size(n);
  if (gamma <= 0) throw ModelError("dephasing rate must be positive");
  PauliSum hamiltonian(n);
  for (int i = 0; i + 1 < n; ++i) {
    const std::uint64_t pair = (1ull << i) | (1ull << (i + 1));
    hamiltonian.add(-jx, PauliString(n, pair, 0));
    hamiltonian.add(-jy, PauliString(n, pair, pair));
    hamiltonian.add(-jz, PauliString(n, 0, pair));
  }
  for (int i = 0; i < n; ++i) {
    hamiltonian.add(h, PauliString::single(n, i, 'X'));
  }

  LindbladModel model;
  model.name = "heisenberg";
  model.dim = 1 << n;
  model.params = {{"n", double(n)}, {"jx", jx}, {"jy", jy},
                  {"jz", jz},       {"h", h},   {"gamma", gamma}};
  model.hamiltonian = hamiltonian.to_dense();
  model.jumps = dephasing_jumps(n, gamma);
  model.sigma_hint = Matrix::Identity(model.dim, model.dim) / double(model.dim);
  model.analytic.lambda_m = 2.0 * gamma;
  model.analytic.lambda_M = 4.0 * h * h;
  const double coeff_norm =
      (n - 1) * (std::abs(jx) + std::abs(jy) + std::abs(jz)) + n * std::abs(h);
  model.analytic.cm_prime = 2.0 * coeff_norm + 2.0 * n * gamma;
  return model;
}

LindbladModel quantum_walk_dephasing(
    const std::vector<std::vector<int>>& adjacency, double gamma) {
  if (gamma <= 0) throw ModelError("dephasing rate must be positive");
  const int v = static_cast<int>(adjacency.size());
  if (v < 2 || (v & (v - 1)) != 0 || v > 64) {
    throw ModelError("walk needs a power-of-two vertex count in [2, 64]");
  }
  int n = 0;
  while ((1 << n) < v) ++n;

  Matrix adj = Matrix::Zero(v, v);
  for (int i = 0; i < v; ++i) {
    if (static_cast<int>(adjacency[i].size()) != v) {
      throw ModelError("adjacency matrix is not square");
    }
    for (int j = 0; j < v; ++j) {
      const int a = adjacency[i][j];
      if (a != 0 && a != 1) throw ModelError("adjacency entries must be 0/1");
      if (i == j && a != 0) throw ModelError("adjacency must have zero diagonal");
      adj(i, j) = a;
    }
  }
  if (max_abs(adj - adj.transpose()) != 0) {
    throw ModelError("adjacency matrix must be symmetric");
  }

  int degree = 0;
  for (int j = 0; j < v; ++j) degree += adjacency[0][j];
  for (int i = 0; i < v; ++i) {
    int row = 0;
    for (int j = 0; j < v; ++j) row += adjacency[i][j];
    if (row != degree) throw ModelError("graph is not regular");
  }

  // connectivity
  std::vector<bool> seen(static_cast<std::size_t>(v), false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const int i = frontier.front();
    frontier.pop();
    for (int j = 0; j < v; ++j) {
      if (adjacency[i][j] && !seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = true;
        ++reached;
        frontier.push(j);
      }
    }
  }
  if (reached != v) throw ModelError("graph is disconnected");

  const Matrix laplacian = double(degree) * Matrix::Identity(v, v) - adj;
  Eigen::SelfAdjointEigenSolver<Matrix> es(laplacian);
  const double delta = es.eigenvalues()(1);  // second smallest
  if (delta <= 1e-12) throw ModelError("Laplacian gap vanished");

  LindbladModel model;
  model.name = "walk";
  model.dim = v;
  model.params = {{"gamma", gamma}, {"degree", double(degree)},
                  {"delta", delta}, {"n_qubits", double(n)}};
  model.hamiltonian = adj;
  model.jumps = dephasing_jumps(n, gamma);
  model.sigma_hint = Matrix::Identity(v, v) / double(v);
  model.analytic.lambda_m = 2.0 * gamma;
  model.analytic.lambda_M = 2.0 * delta;
  return model;
}

std::vector<std::vector<int>> cycle_adjacency(int vertices) {
  if (vertices < 3) throw ModelError("cycle needs at least 3 vertices");
  std::vector<std::vector<int>> adj(
      static_cast<std::size_t>(vertices),
      std::vector<int>(static_cast<std::size_t>(vertices), 0));
  for (int i = 0; i < vertices; ++i) {
    const int j = (i + 1) % vertices;
    adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 1;
  }
  return adj;
}

std::vector<std::vector<int>> complete_adjacency(int vertices) {
  if (vertices < 2) throw ModelError("complete graph needs >= 2 vertices");
  std::vector<std::vector<int>> adj(
      static_cast<std::size_t>(vertices),
      std::vector<int>(static_cast<std::size_t>(vertices), 1));
  for (int i = 0; i < vertices; ++i) adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
  return adj;
}

namespace {

std::vector<std::vector<int>> parse_adjacency(const std::string& text) {
  try {
    if (text.rfind("cycle:", 0) == 0) {
      return cycle_adjacency(std::stoi(text.substr(6)));
    }
    if (text.rfind("complete:", 0) == 0) {
      return complete_adjacency(std::stoi(text.substr(9)));
    }
  } catch (const std::logic_error&) {
    throw InputError("bad vertex count in adjacency shorthand: " + text);
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("adjacency JSON parse error: ") + e.what());
  }
  if (!j.is_array()) throw InputError("adjacency must be a JSON row list");
  std::vector<std::vector<int>> adj;
  for (const auto& row : j) {
    if (!row.is_array()) throw InputError("adjacency rows must be arrays");
    adj.emplace_back();
    for (const auto& x : row) {
      if (!x.is_number_integer()) {
        throw InputError("adjacency entries must be integers");
      }
      adj.back().push_back(x.get<int>());
    }
  }
  return adj;
}

double param_or(const std::map<std::string, double>& params,
                const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

LindbladModel recipe(const std::string& name,
                     const std::map<std::string, double>& params,
                     const std::string& adjacency) {
  if (name == "toy_qubit") return toy_qubit();
  if (name == "qutrit") {
    return qutrit(param_or(params, "omega", 1.0), param_or(params, "gamma", 1.0));
  }
  if (name == "tfim") {
    return tfim_dephasing(static_cast<int>(param_or(params, "n", 2)),
                          param_or(params, "h", 1.0),
                          param_or(params, "gamma", 1.0));
  }
  if (name == "heisenberg") {
    return heisenberg_dephasing(static_cast<int>(param_or(params, "n", 2)),
                                param_or(params, "jx", 1.0),
                                param_or(params, "jy", 1.0),
                                param_or(params, "jz", 1.0),
                                param_or(params, "h", 1.0),
                                param_or(params, "gamma", 1.0));
  }
  if (name == "walk") {
    if (adjacency.empty()) {
      throw InputError("walk recipe needs an adjacency description");
    }
    return quantum_walk_dephasing(parse_adjacency(adjacency),
                                  param_or(params, "gamma", 1.0));
  }
  throw InputError("unknown recipe \"" + name + "\"");
}

}  // namespace hypomix
