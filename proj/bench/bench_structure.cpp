#include <benchmark/benchmark.h>

#include "nctheta/presets.hpp"
#include "nctheta/structure.hpp"

namespace {

nct::LabelTriple sec5_triple() {
    return nct::LabelTriple(nct::presets::sec5_a1(), nct::presets::sec5_a2(),
                            nct::presets::sec5_a3(), nct::SkewMatrix::theta12(0.3));
}

void bench_tensor_serial(benchmark::State& state) {
    nct::LabelTriple triple = sec5_triple();
    for (auto _ : state) {
        auto t = nct::structure_tensor(triple, 1e-12, nct::Execution::serial);
        benchmark::DoNotOptimize(t.values.data());
    }
}
BENCHMARK(bench_tensor_serial)->Unit(benchmark::kMillisecond);

void bench_tensor_parallel(benchmark::State& state) {
    nct::LabelTriple triple = sec5_triple();
    for (auto _ : state) {
        auto t = nct::structure_tensor(triple, 1e-12, nct::Execution::parallel);
        benchmark::DoNotOptimize(t.values.data());
    }
}
BENCHMARK(bench_tensor_parallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
