// Serial reference paths against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "otf/optimizer.hpp"
#include "otf/oracle.hpp"
#include "otf/table.hpp"

using namespace otf;

namespace {

std::vector<int> table_ms() { return parse_int_list("10:120:10"); }
const std::vector<int> kTableNs{5, 7, 9, 11};

void BM_TableSerial(benchmark::State& state) {
  TableOptions opts;
  opts.warm_start = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(compute_table_serial(table_ms(), kTableNs, opts));
}
BENCHMARK(BM_TableSerial)->Arg(0)->Arg(1)->ArgName("warm")->Unit(benchmark::kMillisecond);

void BM_TableParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_table_parallel(table_ms(), kTableNs, {}, threads));
}
BENCHMARK(BM_TableParallel)->Arg(1)->Arg(2)->Arg(4)->ArgName("threads")->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_OracleSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_threshold(12, 5));
}
BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);

void BM_OracleParallel(benchmark::State& state) {
  OracleOptions o;
  o.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_threshold_parallel(12, 5, o));
}
BENCHMARK(BM_OracleParallel)->Arg(1)->Arg(2)->Arg(4)->ArgName("threads")->Unit(benchmark::kMillisecond)->UseRealTime();

// (90, 11) tries several configurations before one is accepted.
void BM_ComputeJobs(benchmark::State& state) {
  ComputeOptions o;
  o.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_threshold(90, 11, o));
}
BENCHMARK(BM_ComputeJobs)->Arg(1)->Arg(2)->Arg(4)->ArgName("jobs")->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_DegreeIndependence(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_threshold(m, 7));
}
BENCHMARK(BM_DegreeIndependence)->Arg(100)->Arg(1000)->Arg(4000)->ArgName("m")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
