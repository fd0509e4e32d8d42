#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hypomix/lindblad.hpp"
#include "hypomix/types.hpp"

namespace hypomix {

/// One certification row of a dissipation-strength sweep. Failed rows carry
/// NaN rate constants and passed = false; the exact gap is still reported
/// when computable.
struct SweepRow {
  double gamma = 0.0;
  double lambda_m = 0.0;
  double lambda_M = 0.0;
  double cm_prime = 0.0;
  double alpha_star = 0.0;
  double epsilon = 0.0;
  double lambda_bound = 0.0;
  double big_c = 0.0;
  double gap_exact = 0.0;
  double tmix_bound = 0.0;
  bool passed = false;
};

struct SweepOptions {
  double eps_target = 0.01;  // accuracy for the reported mixing bound
  int workers = 0;           // 0: hardware concurrency
};

/// Certifies make_model(gamma) for every grid value and compares the
/// certified rate against the exact spectral gap. Rows are computed
/// independently (bounded worker pool) and returned in grid order; per-row
/// failures are recorded in the row, never aborting the sweep.
std::vector<SweepRow> run_sweep(
    const std::function<LindbladModel(double)>& make_model,
    const std::vector<double>& grid, const SweepOptions& options = {});

/// Deterministic CSV with 17 significant digits per value.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// n log-spaced values on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace hypomix
