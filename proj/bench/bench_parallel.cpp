// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "cecsp/exact.hpp"
#include "cecsp/feasibility.hpp"
#include "cecsp/generator.hpp"

namespace {

cecsp::Instance bench_instance(int n) {
  cecsp::GenConfig cfg = cecsp::GenConfig::preset(n, 50);
  cfg.seed = 7;
  return cecsp::generate_instance(cfg);
}

std::vector<cecsp::Instance> bench_suite(int count) {
  std::vector<cecsp::Instance> out;
  for (int k = 0; k < count; ++k) {
    cecsp::GenConfig cfg = cecsp::GenConfig::preset(10, 50);
    cfg.seed = 100 + k;
    out.push_back(cecsp::generate_instance(cfg));
  }
  return out;
}

void BM_EnumerateSerial(benchmark::State& state) {
  const cecsp::Instance inst = bench_instance(static_cast<int>(state.range(0)));
  const cecsp::PrecedenceSet prec = cecsp::PrecedenceSet::job_pairs(inst.num_jobs());
  for (auto _ : state) {
    benchmark::DoNotOptimize(cecsp::enumerate_exact_serial(inst, prec).objective);
  }
}

void BM_EnumerateParallel(benchmark::State& state) {
  const cecsp::Instance inst = bench_instance(static_cast<int>(state.range(0)));
  const cecsp::PrecedenceSet prec = cecsp::PrecedenceSet::job_pairs(inst.num_jobs());
  for (auto _ : state) {
    benchmark::DoNotOptimize(cecsp::enumerate_exact(inst, prec).objective);
  }
}

void BM_FlowBatchSerial(benchmark::State& state) {
  const auto suite = bench_suite(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cecsp::check_feasibility_batch_serial(suite).size());
  }
}

void BM_FlowBatchParallel(benchmark::State& state) {
  const auto suite = bench_suite(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cecsp::check_feasibility_batch(suite).size());
  }
}

}  // namespace

BENCHMARK(BM_EnumerateSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FlowBatchSerial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FlowBatchParallel)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
