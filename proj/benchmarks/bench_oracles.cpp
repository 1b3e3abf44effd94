#include <benchmark/benchmark.h>

#include "lamespec/oracles.hpp"
#include "lamespec/special_functions.hpp"

namespace {

void BM_BesselSequence(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lamespec::special::bessel_j_sequence(100, x));
}
BENCHMARK(BM_BesselSequence)->Arg(5)->Arg(100);

void BM_DiskOracle(benchmark::State& state) {
    const lamespec::LameParameters params(1.0, 1.0);
    const double lambda_max = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lamespec::disk_dirichlet_roots(params, 1.0, lambda_max));
}
BENCHMARK(BM_DiskOracle)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_IntervalSpectrum(benchmark::State& state) {
    const lamespec::LameParameters params(1.0, -0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            lamespec::interval_spectrum_1d(params, 3.0, lamespec::BoundaryCondition::Dirichlet, 100000));
    }
}
BENCHMARK(BM_IntervalSpectrum)->Unit(benchmark::kMillisecond);

}  // namespace
