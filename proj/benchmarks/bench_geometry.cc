#include <benchmark/benchmark.h>

#include "heatbounds/distance.hpp"
#include "heatbounds/quadrature.hpp"

using namespace heatbounds;

static void BM_MeanDistanceSquare(benchmark::State& state) {
    const auto dom = geo::Domain::rectangle(std::vector<double>{1.0, 1.0});
    const auto quad = geo::SphereQuadrature::circle(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(geo::mean_distance(dom, {0.3, 0.4, 0}, quad));
    }
}
BENCHMARK(BM_MeanDistanceSquare)->Arg(64)->Arg(256)->Arg(1024);

static void BM_MeanDistanceHorn(benchmark::State& state) {
    const auto dom = geo::Domain::horn(2.0, 40.0);
    const auto quad = geo::SphereQuadrature::circle(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(geo::mean_distance(dom, {2.0, 0.05, 0}, quad));
    }
}
BENCHMARK(BM_MeanDistanceHorn)->Arg(64)->Arg(256);

static void BM_HornBoundaryDistance(benchmark::State& state) {
    const auto dom = geo::Domain::horn(1.0, 100.0);
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-7;
        benchmark::DoNotOptimize(geo::boundary_distance(dom, {1.0 + x, 0.1, 0}));
    }
}
BENCHMARK(BM_HornBoundaryDistance);

static void BM_RhoMoment(benchmark::State& state) {
    const auto dom = geo::Domain::disk(1.0);
    const auto quad = geo::SphereQuadrature::circle(128);
    const double h = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(geo::moment_integral(dom, geo::FieldKind::rho, 2.0, h, &quad));
    }
    state.SetLabel("h=1/" + std::to_string(state.range(0)));
}
BENCHMARK(BM_RhoMoment)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
