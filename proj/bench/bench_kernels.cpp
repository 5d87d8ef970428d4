#include <benchmark/benchmark.h>
#include <omp.h>

#include <sstream>

#include "quiltlab/fillings.hpp"
#include "quiltlab/fixtures.hpp"
#include "quiltlab/meander.hpp"

using namespace quiltlab;

namespace {

void BM_MeandersSerial(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_meanders_serial(m));
}

void BM_MeandersParallel(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_meanders(m));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_MeandersTransfer(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_meanders_transfer(m));
}

/// Filling enumeration with the OpenMP team limited to range(0) threads.
void BM_Fillings(benchmark::State& state) {
  std::istringstream in(builtin_fixture("two_hole_a").text);
  const Template sub = parse_template_text(in);
  const int previous = omp_get_max_threads();
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_fillings(sub, 2));
  omp_set_num_threads(previous);
}

}  // namespace

BENCHMARK(BM_MeandersSerial)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeandersParallel)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeandersTransfer)->DenseRange(4, 8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fillings)->Arg(1)->Arg(omp_get_num_procs())->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
