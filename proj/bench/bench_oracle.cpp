#include <benchmark/benchmark.h>

#include "hyperchab/oracle.hpp"

using namespace hyperchab;

namespace {

const std::vector<mpq_class>& septic() {
  static const std::vector<mpq_class> f{1, 0, 0, 0, 0, 0, 0, 1};
  return f;
}

const std::map<long, mpq_class>& planted() {
  // (z - 3)(z - 9)(z - 2) expanded.
  static const std::map<long, mpq_class> c{{0, -54}, {1, 51}, {2, -14}, {3, 1}};
  return c;
}

const Decomposition& octic() {
  static const Decomposition D = decompose(HyperellipticCurve::from_roots(3, 1, {0, 3, 9, 1, 2, 4, 5, 7}));
  return D;
}

void BM_PointSearchSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(search_rational_points_serial(septic(), state.range(0)));
}

void BM_PointSearchParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(search_rational_points(septic(), state.range(0)));
}

void BM_ZerosSerial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_padic_zeros_serial(planted(), 3, -1, 3, static_cast<long>(state.range(0))));
}

void BM_ZerosParallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_padic_zeros(planted(), 3, -1, 3, static_cast<long>(state.range(0))));
}

void BM_CoverSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cover_report_serial(octic(), static_cast<long>(state.range(0))));
}

void BM_CoverParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cover_report(octic(), static_cast<long>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_PointSearchSerial)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PointSearchParallel)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZerosSerial)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZerosParallel)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoverSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoverParallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
