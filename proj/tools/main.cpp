// Command line front end: certify models, sweep the dissipation strength,
// and simulate trajectories against the certified envelopes.
//
// Exit codes: 0 success/passed, 1 condition failure, 2 input error,
// 3 numeric failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <hypomix/certifier.hpp>
#include <hypomix/dynamics.hpp>
#include <hypomix/models.hpp>
#include <hypomix/sweep.hpp>

#include <nlohmann/json.hpp>

namespace {

using namespace hypomix;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + out_path);
  out << content;
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto parse_triplet = [&](const std::string& body) {
    double lo = 0, hi = 0;
    int n = 0;
    if (std::sscanf(body.c_str(), "%lf,%lf,%d", &lo, &hi, &n) != 3) {
      throw InputError("grid spec needs lo,hi,n: " + spec);
    }
    return std::tuple{lo, hi, n};
  };
  if (spec.rfind("log:", 0) == 0) {
    const auto [lo, hi, n] = parse_triplet(spec.substr(4));
    return log_grid(lo, hi, n);
  }
  if (spec.rfind("lin:", 0) == 0) {
    const auto [lo, hi, n] = parse_triplet(spec.substr(4));
    if (n < 2) throw InputError("linear grid needs n >= 2");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / double(n - 1);
    }
    return out;
  }
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw InputError("bad grid value: " + item);
    }
  }
  if (out.empty()) throw InputError("empty grid spec");
  return out;
}

struct ModelFlags {
  std::string recipe_name;
  std::string model_file;
  std::string adjacency;
  double omega = 1.0;
  double gamma = 1.0;
  double h = 1.0;
  double jx = 1.0, jy = 1.0, jz = 1.0;
  int n = 2;

  void attach(CLI::App* cmd, bool with_gamma = true) {
    cmd->set_help_flag("--help", "print this help");  // frees --h for the field
    cmd->add_option("--recipe", recipe_name,
                    "built-in model: toy_qubit, qutrit, tfim, heisenberg, walk");
    cmd->add_option("--model-file", model_file, "model JSON file");
    cmd->add_option("--adjacency", adjacency,
                    "walk graph: JSON row list, cycle:N or complete:N");
    cmd->add_option("--omega", omega, "qutrit coupling");
    if (with_gamma) cmd->add_option("--gamma", gamma, "dissipation strength");
    cmd->add_option("--h", h, "transverse field");
    cmd->add_option("--jx", jx, "XX coupling");
    cmd->add_option("--jy", jy, "YY coupling");
    cmd->add_option("--jz", jz, "ZZ coupling");
    cmd->add_option("-n,--n", n, "number of sites");
  }

  LindbladModel build(std::optional<double> gamma_override = {}) const {
    if (!model_file.empty()) return model_from_json(read_file(model_file));
    if (recipe_name.empty()) {
      throw InputError("either --recipe or --model-file is required");
    }
    std::map<std::string, double> params = {
        {"omega", omega}, {"gamma", gamma_override.value_or(gamma)},
        {"h", h},         {"jx", jx},
        {"jy", jy},       {"jz", jz},
        {"n", double(n)}};
    return recipe(recipe_name, params, adjacency);
  }
};

Matrix parse_initial_state(const std::string& spec, int dim) {
  if (spec.rfind("basis:", 0) == 0) {
    int k = -1;
    try {
      k = std::stoi(spec.substr(6));
    } catch (const std::exception&) {
      throw InputError("bad basis index in: " + spec);
    }
    if (k < 0 || k >= dim) throw InputError("basis index out of range");
    Matrix rho = Matrix::Zero(dim, dim);
    rho(k, k) = 1.0;
    return rho;
  }
  if (spec.rfind("random:", 0) == 0) {
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(spec.substr(7));
    } catch (const std::exception&) {
      throw InputError("bad seed in: " + spec);
    }
    std::mt19937_64 rng(seed);
    return random_pure_state(dim, rng);
  }
  if (std::filesystem::exists(spec)) {
    const auto j = nlohmann::json::parse(read_file(spec), nullptr, false);
    if (j.is_discarded()) throw InputError("state file is not valid JSON");
    if (!j.is_object() || !j.contains("dim") || !j.contains("data")) {
      throw InputError("state file needs \"dim\" and \"data\"");
    }
    try {
      const auto& data = j["data"];
      if (j["dim"].get<int>() != dim ||
          data.size() != std::size_t(dim) * std::size_t(dim)) {
        throw InputError("state dimension differs from model");
      }
      Matrix rho(dim, dim);
      std::size_t k = 0;
      for (int i = 0; i < dim; ++i)
        for (int jj = 0; jj < dim; ++jj, ++k)
          rho(i, jj) =
              Complex(data[k][0].get<double>(), data[k][1].get<double>());
      return rho;
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("state file has wrong value types: ") +
                       e.what());
    }
  }
  throw InputError("initial state must be basis:k, random:seed or a JSON file");
}

int run_certify(const ModelFlags& flags, double eps, const std::string& out) {
  const LindbladModel model = flags.build();
  const HypoCertificate cert = certify(model);
  nlohmann::json j = nlohmann::json::parse(cert.to_json());
  j["eps_target"] = eps;
  if (cert.passed) j["tmix_bound_at_eps_target"] = cert.tmix_bound(eps);
  write_output(out, j.dump(2) + "\n");
  return cert.passed ? 0 : 1;
}

int run_sweep_cmd(const ModelFlags& flags, const std::string& grid_spec,
                  double eps, int workers, const std::string& out) {
  if (flags.recipe_name.empty()) {
    throw InputError("sweep needs --recipe (the swept parameter is gamma)");
  }
  const std::vector<double> grid = parse_grid(grid_spec);
  SweepOptions options;
  options.eps_target = eps;
  options.workers = workers;
  const auto rows = run_sweep(
      [&](double gamma) { return flags.build(gamma); }, grid, options);
  write_output(out, sweep_to_csv(rows));
  for (const auto& row : rows) {
    if (!row.passed) return 1;
  }
  return 0;
}

/// Trace-distance trajectory without a certificate: no envelope columns.
Trajectory raw_state_trajectory(const LindbladModel& model, const Matrix& sigma,
                                const Matrix& rho0,
                                const std::vector<double>& times) {
  const Matrix gen = schrodinger_vec_generator(model);
  const Vector v0 = Eigen::Map<const Vector>(rho0.data(), rho0.size());
  Trajectory traj;
  for (double t : times) {
    const Vector vt = propagate(gen, v0, t);
    TrajectoryPoint pt;
    pt.time = t;
    pt.trace_distance = trace_norm(
        Eigen::Map<const Matrix>(vt.data(), model.dim, model.dim) - sigma);
    traj.points.push_back(pt);
  }
  return traj;
}

int run_simulate(const ModelFlags& flags, const std::string& initial,
                 double eps, const std::string& grid_spec, std::uint64_t seed,
                 const std::string& out) {
  const LindbladModel model = flags.build();
  const HypoCertificate cert = certify(model);
  const Matrix rho0 = parse_initial_state(initial, model.dim);

  if (!cert.passed) {
    // still useful: the raw relaxation toward the recorded stationary state
    const std::vector<double> times = grid_spec.empty()
                                          ? log_time_grid(1e-3, 100.0, 200)
                                          : parse_grid(grid_spec);
    write_output(out, raw_state_trajectory(model, cert.sigma, rho0, times).to_csv());
    std::cerr << "# certification failed; raw trajectory without envelope\n";
    return 1;
  }

  const double horizon = 2.0 * cert.tmix_bound(eps);
  const std::vector<double> times =
      grid_spec.empty() ? log_time_grid(1e-3, horizon, 200)
                        : parse_grid(grid_spec);

  const Trajectory traj = schrodinger_decay(model, cert, rho0, times);
  write_output(out, traj.to_csv());

  try {
    const double empirical =
        empirical_mixing_time(model, eps, times, seed);
    std::cerr << "# empirical_mixing_estimate=" << empirical
              << " certified_tmix_bound=" << cert.tmix_bound(eps)
              << " eps=" << eps
              << " (empirical value is a lower estimate over probe states)\n";
  } catch (const HorizonError& e) {
    std::cerr << "# accuracy target not reached within the grid"
              << " (last distance " << e.last_distance << ")\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hypomix: mixing-time certificates for Lindblad dynamics via "
      "hypocoercive estimates"};
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);

  ModelFlags certify_flags, sweep_flags, simulate_flags;
  double certify_eps = 0.01, sweep_eps = 0.01, simulate_eps = 0.01;
  std::string certify_out, sweep_out, simulate_out;
  std::string sweep_grid = "log:0.01,100,25";
  std::string simulate_grid, simulate_initial = "basis:0";
  std::uint64_t simulate_seed = 1234;
  int sweep_workers = 0;

  CLI::App* certify_cmd =
      app.add_subcommand("certify", "compute a convergence certificate");
  certify_flags.attach(certify_cmd);
  certify_cmd->add_option("--eps", certify_eps, "mixing accuracy target");
  certify_cmd->add_option("--out", certify_out, "output path (default stdout)");

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "certify across a grid of dissipation strengths");
  sweep_flags.attach(sweep_cmd, /*with_gamma=*/false);
  sweep_cmd->add_option("--grid", sweep_grid,
                        "gamma grid: log:lo,hi,n | lin:lo,hi,n | v1,v2,...");
  sweep_cmd->add_option("--eps", sweep_eps, "mixing accuracy target");
  sweep_cmd->add_option("--workers", sweep_workers, "worker threads (0=auto)");
  sweep_cmd->add_option("--out", sweep_out, "output CSV path");

  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "propagate a state and track the certified envelope");
  simulate_flags.attach(simulate_cmd);
  simulate_cmd->add_option("--initial", simulate_initial,
                           "basis:k | random:seed | dense JSON file");
  simulate_cmd->add_option("--eps", simulate_eps, "mixing accuracy target");
  simulate_cmd->add_option("--grid", simulate_grid,
                           "time grid (default: 200 log points to 2x bound)");
  simulate_cmd->add_option("--seed", simulate_seed, "probe-state seed");
  simulate_cmd->add_option("--out", simulate_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (certify_cmd->parsed()) {
      return run_certify(certify_flags, certify_eps, certify_out);
    }
    if (sweep_cmd->parsed()) {
      return run_sweep_cmd(sweep_flags, sweep_grid, sweep_eps, sweep_workers,
                           sweep_out);
    }
    return run_simulate(simulate_flags, simulate_initial, simulate_eps,
                        simulate_grid, simulate_seed, simulate_out);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
