#include <benchmark/benchmark.h>

#include "spinpoly/gorenstein.hpp"
#include "spinpoly/hilbert.hpp"

using namespace spinpoly;

static void BM_CountTheta(benchmark::State& state) {
    PolytopeSpec spec(build_named(NamedGraph::Theta), state.range(0));
    std::uint64_t count = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(count = count_lattice_points(spec, 1));
    state.counters["points"] = static_cast<double>(count);
}
BENCHMARK(BM_CountTheta)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_CountGenus3(benchmark::State& state) {
    PolytopeSpec spec(build_caterpillar(3, 0), state.range(0));
    std::uint64_t count = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(count = count_lattice_points(spec, 1));
    state.counters["points"] = static_cast<double>(count);
}
BENCHMARK(BM_CountGenus3)->Arg(8)->Arg(16)->Arg(24);

static void BM_CountGenus3Parallel(benchmark::State& state) {
    PolytopeSpec spec(build_caterpillar(3, 0), 24);
    EnumLimits limits;
    limits.workers = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(count_lattice_points(spec, 1, false, limits));
}
BENCHMARK(BM_CountGenus3Parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

static void BM_EnumerateInterior(benchmark::State& state) {
    PolytopeSpec spec(build_caterpillar(2, 1), state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_lattice_points(spec, 2, true));
}
BENCHMARK(BM_EnumerateInterior)->Arg(4)->Arg(8);

static void BM_PsiRecurse(benchmark::State& state) {
    const std::vector<std::int64_t> r{2, 1, 1};
    for (auto _ : state) {
        MemoCache cache; // cold every iteration
        benchmark::DoNotOptimize(
            psi(3, 3, r, state.range(0), PsiMethod::Recurse, &cache));
    }
}
BENCHMARK(BM_PsiRecurse)->Arg(4)->Arg(8);

static void BM_HilbertTheta(benchmark::State& state) {
    PolytopeSpec spec(build_named(NamedGraph::Theta), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(hilbert_function(spec, state.range(0)));
}
BENCHMARK(BM_HilbertTheta)->Arg(8)->Arg(16);

static void BM_Classify(benchmark::State& state) {
    const std::vector<std::int64_t> r{1};
    for (auto _ : state)
        benchmark::DoNotOptimize(classify(2, 1, r, state.range(0), {}));
}
BENCHMARK(BM_Classify)->Arg(2)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
