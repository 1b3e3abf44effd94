#include <benchmark/benchmark.h>

#include "lamespec/oracles.hpp"
#include "lamespec/trace_fit.hpp"

namespace {

const lamespec::LameParameters kParams(1.0, 1.0);

const lamespec::Spectrum& disk_spectrum() {
    static const auto spectrum = lamespec::disk_dirichlet_roots(kParams, 1.0, 1000.0).spectrum;
    return spectrum;
}

void BM_HeatTracePartial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(lamespec::heat_trace_partial(disk_spectrum(), 0.01));
}
BENCHMARK(BM_HeatTracePartial);

void BM_EndToEndRecover(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            lamespec::end_to_end_recover(disk_spectrum(), kParams, 2, lamespec::BoundaryCondition::Dirichlet));
    }
}
BENCHMARK(BM_EndToEndRecover)->Unit(benchmark::kMillisecond);

}  // namespace
