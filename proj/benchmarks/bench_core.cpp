#include <benchmark/benchmark.h>

#include "cbm/certify.hpp"
#include "cbm/estimate.hpp"
#include "cbm/hexagon.hpp"
#include "cbm/witness.hpp"

namespace {

using namespace cbm;

void BM_InscribeHexagon(benchmark::State& state) {
    const ConvexPolygon poly =
        random_convex_polygon(static_cast<int>(state.range(0)), 42);
    for (auto _ : state) {
        AffineRegularHexagon hex = inscribe_hexagon(poly);
        benchmark::DoNotOptimize(hex);
    }
}
BENCHMARK(BM_InscribeHexagon)->Arg(8)->Arg(24)->Arg(64);

void BM_WitnessConstruct(benchmark::State& state) {
    const ConvexPolygon C = random_convex_polygon(static_cast<int>(state.range(0)), 7);
    const ConvexPolygon D = random_convex_polygon(static_cast<int>(state.range(0)), 8);
    for (auto _ : state) {
        WitnessResult res = construct(C, D);
        benchmark::DoNotOptimize(res.witness.lambda);
    }
}
BENCHMARK(BM_WitnessConstruct)->Arg(12)->Arg(32);

void BM_CertifyGrid(benchmark::State& state) {
    for (auto _ : state) {
        BoundReport rep = certify_g_max_on_Q(static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(rep.max_value);
    }
}
BENCHMARK(BM_CertifyGrid)->Arg(128)->Arg(512);

void BM_EstimateCen(benchmark::State& state) {
    const ConvexPolygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const ConvexPolygon tri({{0, 0}, {1, 0}, {0, 1}});
    const EstimatorConfig cfg = EstimatorConfig::low_budget();
    for (auto _ : state) {
        EstimateResult res = estimate_cen(square, tri, cfg);
        benchmark::DoNotOptimize(res.lambda_hat);
    }
}
BENCHMARK(BM_EstimateCen);

void BM_CentroidLemma(benchmark::State& state) {
    const ConvexPolygon poly = random_convex_polygon(24, 5);
    const AffineRegularHexagon hex = inscribe_hexagon(poly);
    for (auto _ : state) {
        CentroidLemmaResult res = check_centroid_lemma(poly, hex);
        benchmark::DoNotOptimize(res.margin);
    }
}
BENCHMARK(BM_CentroidLemma);

} // namespace

BENCHMARK_MAIN();
