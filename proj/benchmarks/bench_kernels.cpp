// Serial reference vs OpenMP kernel comparison for the hot loops.

#include <benchmark/benchmark.h>

#include "rmz/asymptotics.hpp"
#include "rmz/remez.hpp"
#include "rmz/rng.hpp"

using namespace rmz;

namespace {

Polynomial bench_poly(int degree) {
  auto rng = substream(901, degree);
  std::vector<Complex> coeffs(degree + 1);
  for (auto& c : coeffs) c = complex_gaussian(rng);
  while (std::abs(coeffs.back()) < 1e-2) coeffs.back() = complex_gaussian(rng);
  return Polynomial(coeffs);
}

PointSet bench_points(int n) {
  auto rng = substream(902, n);
  PointSet ps;
  for (int i = 0; i < n; ++i)
    ps.points.push_back(uniform_in_disk(rng, {0, 0}, 1.0));
  return ps;
}

void BM_boundary_max(benchmark::State& state) {
  Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
  Polynomial p = bench_poly(16);
  Disk disk{{0.1, -0.2}, 1.3};
  for (auto _ : state) {
    auto r = max_modulus_on_disk(p, disk, exec);
    benchmark::DoNotOptimize(r.max_value);
  }
}
BENCHMARK(BM_boundary_max)->Arg(0)->Arg(1);

void BM_remez_harness(benchmark::State& state) {
  Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
  PointSet Z = bench_points(8);
  for (auto _ : state) {
    auto certs = verify_polynomial_remez(Z, 4, 32, 77, exec);
    benchmark::DoNotOptimize(certs.size());
  }
}
BENCHMARK(BM_remez_harness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_cartan_sampling(benchmark::State& state) {
  Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
  auto rng = substream(903, 0);
  std::vector<Complex> coeffs(5);
  for (int k = 0; k < 4; ++k) coeffs[k] = complex_gaussian(rng);
  coeffs[4] = Complex(1, 0);
  Polynomial p(coeffs);
  for (auto _ : state) {
    auto rep = verify_cartan(p, 0.1, 2000, 9, exec);
    benchmark::DoNotOptimize(rep.cd_of_sample);
  }
}
BENCHMARK(BM_cartan_sampling)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_zr_table(benchmark::State& state) {
  Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
  for (auto _ : state) {
    auto rows = zr_table({1}, {8, 16, 32, 64}, exec);
    benchmark::DoNotOptimize(rows.size());
  }
}
BENCHMARK(BM_zr_table)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
