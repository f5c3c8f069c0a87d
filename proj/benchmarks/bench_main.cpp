#include <benchmark/benchmark.h>

#include <foldatlas/folding.hpp>
#include <foldatlas/surface.hpp>
#include <foldatlas/versality.hpp>

using namespace foldatlas;

namespace {

Rational fact(int n) {
    Rational r(1);
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// a dense-ish B2 germ with awkward denominators
SurfaceGerm bench_germ(int order) {
    Jet f(2, order);
    auto set = [&](int i, int j, Rational a) {
        f.set_coefficient(Exponent{i, j, 0, 0}, a / (fact(i) * fact(j)));
    };
    set(2, 0, Rational(7, 3));
    set(2, 1, Rational(5, 2));
    set(1, 2, Rational(-3, 7));
    set(1, 3, Rational(11, 5));
    for (int d = 4; d <= order; ++d)
        for (int i = 0; i <= d; ++i)
            if (!(i <= 1 && d - i == 3 - i)) set(i, d - i, Rational(2 * i - d, d + 1));
    set(0, 3, 0);
    set(1, 1, 0);
    return SurfaceGerm(f);
}

void BM_JetMultiply(benchmark::State& state) {
    int order = static_cast<int>(state.range(0));
    Jet a = bench_germ(order).jet();
    Jet b = a.partial_derivative(0);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMultiply)->Arg(5)->Arg(8)->Arg(12);

void BM_Classify(benchmark::State& state) {
    SurfaceGerm s = bench_germ(6);
    for (auto _ : state) benchmark::DoNotOptimize(classify(s).tag);
}
BENCHMARK(BM_Classify);

void BM_AssembleTangentMatrix(benchmark::State& state) {
    FoldingMap F = build_folding_map(bench_germ(6));
    for (auto _ : state) benchmark::DoNotOptimize(assemble_tangent_matrix(F, 5, true).cols());
}
BENCHMARK(BM_AssembleTangentMatrix);

void BM_RankB2(benchmark::State& state) {
    FoldingMap F = build_folding_map(bench_germ(6));
    TangentSpaceMatrix m = assemble_tangent_matrix(F, 5, true);
    for (auto _ : state) benchmark::DoNotOptimize(rank_exact(m));
}
BENCHMARK(BM_RankB2);

void BM_VersalVerdict(benchmark::State& state) {
    SurfaceGerm s = bench_germ(6);
    for (auto _ : state) benchmark::DoNotOptimize(is_versal_rotation(s).versal_by_rank);
}
BENCHMARK(BM_VersalVerdict);

} // namespace

BENCHMARK_MAIN();
