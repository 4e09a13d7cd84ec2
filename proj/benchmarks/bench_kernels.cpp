#include <benchmark/benchmark.h>

#include "numrad/certificate.hpp"
#include "numrad/linalg.hpp"
#include "numrad/radius.hpp"
#include "numrad/rng.hpp"
#include "numrad/sdp.hpp"

using namespace numrad;

namespace {

ComplexMatrix input(std::size_t n) {
  SplitMix64 rng(42 + n);
  ComplexMatrix a = gaussian_matrix(n, rng);
  a *= 1.0 / a.frobenius_norm();
  return a;
}

void BM_HermEig(benchmark::State& state) {
  const HermitianMatrix h = HermitianMatrix::hermitian_part(input(2 * state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(h));
}
BENCHMARK(BM_HermEig)->DenseRange(2, 8, 2);

void BM_DeltaSvd(benchmark::State& state) {
  const ComplexMatrix d = build_delta(input(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(d));
}
BENCHMARK(BM_DeltaSvd)->DenseRange(2, 6);

void BM_RadiusBoundary(benchmark::State& state) {
  const ComplexMatrix a = input(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(radius_boundary(a));
}
BENCHMARK(BM_RadiusBoundary)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_SolveRadius(benchmark::State& state) {
  const ComplexMatrix a = input(state.range(0));
  SdpSolver solver;
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve_radius(a));
}
BENCHMARK(BM_SolveRadius)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_SolveProx(benchmark::State& state) {
  const ComplexMatrix y = input(state.range(0));
  SdpSolver solver;
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve_prox(y, 0.75));
}
BENCHMARK(BM_SolveProx)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
