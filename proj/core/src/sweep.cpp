#include "hypomix/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "hypomix/certifier.hpp"

namespace hypomix {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SweepRow compute_row(const std::function<LindbladModel(double)>& make_model,
                     double gamma, double eps_target) {
  SweepRow row;
  row.gamma = gamma;
  row.lambda_m = kNaN;
  row.lambda_M = kNaN;
  row.cm_prime = kNaN;
  row.alpha_star = kNaN;
  row.epsilon = kNaN;
  row.lambda_bound = kNaN;
  row.big_c = kNaN;
  row.gap_exact = kNaN;
  row.tmix_bound = kNaN;

  LindbladModel model;
  try {
    model = make_model(gamma);
  } catch (const Error&) {
    return row;
  }
  try {
    row.gap_exact = exact_spectrum(model).gap;
  } catch (const Error&) {
  }
  try {
    const HypoCertificate cert = certify(model);
    row.lambda_m = cert.lambda_m;
    row.lambda_M = cert.lambda_M;
    row.cm_prime = cert.cm_prime;
    row.alpha_star = cert.alpha_star;
    row.epsilon = cert.epsilon;
    row.lambda_bound = cert.lambda;
    row.big_c = cert.big_c;
    row.passed = cert.passed;
    if (cert.passed) row.tmix_bound = cert.tmix_bound(eps_target);
  } catch (const Error&) {
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(
    const std::function<LindbladModel(double)>& make_model,
    const std::vector<double>& grid, const SweepOptions& options) {
  std::vector<SweepRow> rows(grid.size());
  if (grid.empty()) return rows;

  unsigned workers = options.workers > 0
                         ? static_cast<unsigned>(options.workers)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(grid.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      rows[i] = compute_row(make_model, grid[i], options.eps_target);
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "gamma,lambda_m,lambda_M,cm_prime,alpha_star,epsilon,lambda_bound,"
      "big_c,gap_exact,tmix_bound,passed\n";
  char buf[40];
  const auto append = [&](double v, char sep) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
    out += sep;
  };
  for (const SweepRow& r : rows) {
    append(r.gamma, ',');
    append(r.lambda_m, ',');
    append(r.lambda_M, ',');
    append(r.cm_prime, ',');
    append(r.alpha_star, ',');
    append(r.epsilon, ',');
    append(r.lambda_bound, ',');
    append(r.big_c, ',');
    append(r.gap_exact, ',');
    append(r.tmix_bound, ',');
    out += r.passed ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0) || !(hi > lo) || n < 1) {
    throw DomainError("log grid needs 0 < lo < hi and n >= 1");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        std::pow(10.0, a + (b - a) * double(i) / double(n - 1));
  }
  return out;
}

}  // namespace hypomix
