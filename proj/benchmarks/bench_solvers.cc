#include <benchmark/benchmark.h>

#include "heatbounds/heat.hpp"
#include "heatbounds/torsion.hpp"

using namespace heatbounds;

static void BM_PoissonSolve(benchmark::State& state) {
    const double h = 1.0 / static_cast<double>(state.range(0));
    const auto grid = pde::build_grid(geo::Domain::rectangle(std::vector<double>{1.0, 1.0}), h);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pde::torsion(grid).rigidity);
    }
    state.SetLabel(std::to_string(grid->n_active()) + " nodes");
}
BENCHMARK(BM_PoissonSolve)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_HeatStep(benchmark::State& state) {
    const double h = 1.0 / static_cast<double>(state.range(0));
    const auto grid = pde::build_grid(geo::Domain::rectangle(std::vector<double>{1.0, 1.0}), h);
    const std::vector<double> ts{0.01};
    for (auto _ : state) {
        benchmark::DoNotOptimize(pde::heat_content(*grid, ts).q[0]);
    }
    state.SetLabel(std::to_string(grid->n_active()) + " nodes, 20 steps");
}
BENCHMARK(BM_HeatStep)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_StencilApply(benchmark::State& state) {
    const double h = 1.0 / static_cast<double>(state.range(0));
    const auto grid = pde::build_grid(geo::Domain::disk(1.0), h);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(grid->n_active());
    Eigen::VectorXd y(grid->n_active());
    for (auto _ : state) {
        grid->apply_operator(1.0, 1e-4, x, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * grid->n_active());
}
BENCHMARK(BM_StencilApply)->Arg(128)->Arg(256)->Arg(512);

BENCHMARK_MAIN();
