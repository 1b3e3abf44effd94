#include <benchmark/benchmark.h>

#include "lamespec/fem.hpp"

namespace {

const lamespec::Domain kDisk{lamespec::Disk{1.0}};
const lamespec::LameParameters kParams(1.0, 1.0);

void BM_GenerateDiskMesh(benchmark::State& state) {
    const double h = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lamespec::generate_mesh(kDisk, h));
}
BENCHMARK(BM_GenerateDiskMesh)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
    const auto mesh = lamespec::generate_mesh(kDisk, 1.0 / static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lamespec::assemble(mesh, kParams, lamespec::BoundaryCondition::Dirichlet));
    }
    state.counters["triangles"] = static_cast<double>(mesh.triangle_count());
}
BENCHMARK(BM_Assemble)->Arg(16)->Arg(56)->Unit(benchmark::kMillisecond);

void BM_SolveLowest20(benchmark::State& state) {
    const auto mesh = lamespec::generate_mesh(kDisk, 1.0 / static_cast<double>(state.range(0)));
    const auto system = lamespec::assemble(mesh, kParams, lamespec::BoundaryCondition::Dirichlet);
    for (auto _ : state) benchmark::DoNotOptimize(lamespec::solve_lowest(system, 20));
    state.counters["unknowns"] = system.unknowns();
}
BENCHMARK(BM_SolveLowest20)->Arg(16)->Arg(56)->Unit(benchmark::kMillisecond);

}  // namespace
