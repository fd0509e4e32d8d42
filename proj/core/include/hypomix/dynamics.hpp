#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hypomix/certifier.hpp"
#include "hypomix/lindblad.hpp"
#include "hypomix/types.hpp"

namespace hypomix {

struct TrajectoryPoint {
  double time = 0.0;
  double gns_norm = std::numeric_limits<double>::quiet_NaN();
  double trace_distance = std::numeric_limits<double>::quiet_NaN();
  double lyapunov = std::numeric_limits<double>::quiet_NaN();
  double envelope_value = std::numeric_limits<double>::quiet_NaN();
  bool envelope_ok = true;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  /// Columns: time, gns_norm, trace_distance, lyapunov, envelope_value,
  /// envelope_ok.
  std::string to_csv() const;
};

/// e^{t M} applied to a matrix or coordinate vector, via dense
/// scaling-and-squaring (t >= 0).
Matrix propagator(const Matrix& generator, double t);
Vector propagate(const Matrix& generator, const Vector& initial, double t);
Vector propagate(const SuperOpMatrix& generator, const Vector& initial,
                 double t);

/// 200 log-spaced times on [t_min, t_max].
std::vector<double> log_time_grid(double t_min, double t_max, int n = 200);

/// Norm decay of an observable under the Heisenberg semigroup. The initial
/// observable is centered to tr(sigma A0) = 0 first; each sample records the
/// weighted norm, the twisted-norm value at the certificate's (eps, alpha*),
/// and the certified envelope C e^{-lambda t} ||A0||.
Trajectory heisenberg_decay(const LindbladModel& model,
                            const HypoCertificate& cert, const Matrix& a0,
                            const std::vector<double>& times);

/// Trace-distance decay of a state under the dual semigroup, with the
/// certified envelope C ||sigma^{-1} rho0|| e^{-lambda t}.
Trajectory schrodinger_decay(const LindbladModel& model,
                             const HypoCertificate& cert, const Matrix& rho0,
                             const std::vector<double>& times);

/// Smallest grid time at which every probe state (all computational basis
/// states plus `random_probes` seeded Haar-random pure states) is within
/// eps_target trace distance of the stationary state. This is an empirical
/// lower estimate of the true mixing time (the supremum over all states is
/// not scanned). Throws HorizonError when the grid ends too early.
double empirical_mixing_time(const LindbladModel& model, double eps_target,
                             const std::vector<double>& times,
                             std::uint64_t seed = 1234,
                             int random_probes = 20);

/// Haar-random pure state of dimension d (outer product of a normalized
/// complex Gaussian vector).
Matrix random_pure_state(int dim, std::mt19937_64& rng);

}  // namespace hypomix
