#include <benchmark/benchmark.h>

#include <random>

#include <hypomix/certifier.hpp>
#include <hypomix/dynamics.hpp>
#include <hypomix/models.hpp>
#include <hypomix/pauli.hpp>

namespace {

using namespace hypomix;

void BM_PauliProduct(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> bits(0, (1ull << 6) - 1);
  const PauliString p(6, bits(rng), bits(rng));
  const PauliString q(6, bits(rng), bits(rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiply(p, q));
  }
}
BENCHMARK(BM_PauliProduct);

void BM_DenseConversion(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  PauliSum h(n);
  for (int i = 0; i + 1 < n; ++i) {
    h.add(1.0, PauliString(n, 0, (3ull << i)));
  }
  for (int i = 0; i < n; ++i) h.add(1.0, PauliString::single(n, i, 'X'));
  for (auto _ : state) {
    benchmark::DoNotOptimize(h.to_dense());
  }
}
BENCHMARK(BM_DenseConversion)->Arg(3)->Arg(5);

void BM_Certify(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto model = tfim_dephasing(n, 1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify(model));
  }
}
BENCHMARK(BM_Certify)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CertifyQutrit(benchmark::State& state) {
  const auto model = qutrit(1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify(model));
  }
}
BENCHMARK(BM_CertifyQutrit)->Unit(benchmark::kMillisecond);

void BM_ExactSpectrum(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto model = tfim_dephasing(n, 1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_spectrum(model));
  }
}
BENCHMARK(BM_ExactSpectrum)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Propagate(benchmark::State& state) {
  const auto model = tfim_dephasing(3, 1.0, 1.0);
  const Matrix gen = schrodinger_vec_generator(model);
  Vector v0 = Vector::Zero(gen.rows());
  v0(0) = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(gen, v0, 1.0));
  }
}
BENCHMARK(BM_Propagate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
