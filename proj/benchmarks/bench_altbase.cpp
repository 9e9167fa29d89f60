#include <benchmark/benchmark.h>

#include "altbase/empirics.hpp"
#include "altbase/measures.hpp"

using namespace altbase;

namespace {

void BM_compose(benchmark::State& state) {
    const long n = state.range(0);
    for (auto _ : state) {
        auto m = PiecewiseAffineMap::compose({FieldElem(n), FieldElem(7, 3)});
        benchmark::DoNotOptimize(m.branches().size());
    }
}
BENCHMARK(BM_compose)->Arg(3)->Arg(12)->Arg(48);

void BM_dk10_density(benchmark::State& state) {
    auto map = PiecewiseAffineMap::compose({FieldElem(state.range(0)), FieldElem(7, 3)});
    for (auto _ : state) {
        auto d = dk10_density(map, 30);
        benchmark::DoNotOptimize(d.f.values.size());
    }
}
BENCHMARK(BM_dk10_density)->Arg(3)->Arg(6);

void BM_solve_density_exact(benchmark::State& state) {
    auto map = PiecewiseAffineMap::compose({FieldElem(state.range(0)), FieldElem(7, 3)});
    for (auto _ : state) {
        auto f = solve_density_exact(map);
        benchmark::DoNotOptimize(f.values.size());
    }
}
BENCHMARK(BM_solve_density_exact)->Arg(3)->Arg(6);

void BM_orbit_iteration(benchmark::State& state) {
    // infinite orbit: measures raw exact-arithmetic iteration cost
    auto map = PiecewiseAffineMap::compose({FieldElem(5, 3), FieldElem(7, 4)});
    for (auto _ : state) {
        FieldElem x = map.eval_at_one();
        for (int i = 0; i < state.range(0); ++i) x = map.eval(x);
        benchmark::DoNotOptimize(x.sign());
    }
}
BENCHMARK(BM_orbit_iteration)->Arg(16)->Arg(64);

void BM_ulam(benchmark::State& state) {
    auto map = PiecewiseAffineMap::compose({FieldElem(4, 3), FieldElem(3, 2)});
    for (auto _ : state) {
        auto h = ulam_density(map, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(h.heights[0]);
    }
}
BENCHMARK(BM_ulam)->Arg(100)->Arg(1000);

void BM_birkhoff(benchmark::State& state) {
    auto map = PiecewiseAffineMap::compose({FieldElem(3), FieldElem(7, 3)});
    for (auto _ : state) {
        auto h = birkhoff_histogram(map, std::nullopt, state.range(0), 100, 100, 0);
        benchmark::DoNotOptimize(h.heights[0]);
    }
}
BENCHMARK(BM_birkhoff)->Arg(100000)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
