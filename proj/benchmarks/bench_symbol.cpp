#include <benchmark/benchmark.h>

#include <vector>

#include "lamespec/symbol.hpp"

namespace {

void BM_ResolventTraceClosed(benchmark::State& state) {
    const lamespec::LameParameters params(1.0, 0.5);
    const int n = static_cast<int>(state.range(0));
    const lamespec::ComplexScalar lambda{-3.0, 2.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(lamespec::resolvent_trace_closed(params, n, 1.7, lambda));
    }
}
BENCHMARK(BM_ResolventTraceClosed)->Arg(2)->Arg(8);

void BM_ResolventTraceDense(benchmark::State& state) {
    const lamespec::LameParameters params(1.0, 0.5);
    const std::vector<double> xi(static_cast<std::size_t>(state.range(0)), 0.4);
    const lamespec::ComplexScalar lambda{-3.0, 2.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(lamespec::resolvent_trace_bruteforce(params, xi, lambda));
    }
}
BENCHMARK(BM_ResolventTraceDense)->Arg(2)->Arg(8);

void BM_ContourIntegral(benchmark::State& state) {
    const lamespec::LameParameters params(1.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lamespec::contour_integral_oracle(params, 3, 2.0, 0.1));
    }
}
BENCHMARK(BM_ContourIntegral);

void BM_SymbolPropertyCheck(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(lamespec::symbol_property_check(4, 100));
    }
}
BENCHMARK(BM_SymbolPropertyCheck)->Unit(benchmark::kMillisecond);

}  // namespace
