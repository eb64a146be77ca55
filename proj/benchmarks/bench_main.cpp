#include "linkint/linkint.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace linkint;

static void BM_OmegaClosedForm(benchmark::State& state) {
    double alpha = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(omega(1, 1, alpha));
        alpha = alpha < 3.0 ? alpha + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_OmegaClosedForm);

static void BM_OmegaQuadrature(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0)), l = static_cast<int>(state.range(1));
    double alpha = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(omega(k, l, alpha));
        alpha = alpha < 3.0 ? alpha + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_OmegaQuadrature)->Args({1, 2})->Args({2, 2})->Args({3, 4});

static void BM_Determinant(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    SquareMat m(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) m(i, j) = g(rng);
    for (auto _ : state) benchmark::DoNotOptimize(determinant(m));
}
BENCHMARK(BM_Determinant)->DenseRange(3, 6);

static void BM_LinkingNumber(benchmark::State& state, const char* name, int order) {
    const Scene s = builtin_scene(name);
    QuadratureSpec spec;
    spec.base_order = order;
    spec.workers = 1;
    std::size_t nodes = 0;
    for (auto _ : state) {
        const auto r = linking_number(s, spec);
        nodes = r.node_count;
        benchmark::DoNotOptimize(r.value);
    }
    state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK_CAPTURE(BM_LinkingNumber, hopf_order64, "hopf_great_circles", 64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_LinkingNumber, r3_hopf, "r3_hopf_circles", 32)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_LinkingNumber, s2xr, "s2xr_equator_poles", 32)->Unit(benchmark::kMillisecond);

static void BM_GreatSpheres22(benchmark::State& state) {
    const Scene s = builtin_scene("great_spheres", {{"k", 2}, {"l", 2}});
    QuadratureSpec spec;
    spec.base_order = 16;
    for (auto _ : state) benchmark::DoNotOptimize(linking_number(s, spec).value);
}
BENCHMARK(BM_GreatSpheres22)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_OracleCrossings(benchmark::State& state) {
    const Scene s = builtin_scene("r3_hopf_circles");
    const PolyLink link = sample_to_polylink(s.K, s.L, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(oracle_linking_number(link));
}
BENCHMARK(BM_OracleCrossings)->Arg(64)->Arg(256);
BENCHMARK_MAIN();
