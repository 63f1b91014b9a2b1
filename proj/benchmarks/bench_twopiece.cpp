#include <benchmark/benchmark.h>

#include "murphy/normal.hpp"
#include "murphy/twopiece.hpp"

namespace {

void BM_NormalQuantile(benchmark::State& state) {
    double p = 0.0001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(murphy::norm_quantile(p));
        p += 0.0001;
        if (p >= 1.0) p = 0.0001;
    }
}
BENCHMARK(BM_NormalQuantile);

void BM_TwoPieceQuantile(benchmark::State& state) {
    const murphy::TwoPieceNormalParams params(2.0, 0.8, -0.35);
    double tau = 0.001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(murphy::twopiece::quantile(params, tau));
        tau += 0.001;
        if (tau >= 1.0) tau = 0.001;
    }
}
BENCHMARK(BM_TwoPieceQuantile);

void BM_GammaFromXi(benchmark::State& state) {
    double xi = -0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            murphy::twopiece::gamma_from_xi(murphy::BoeReportedParams(2.0, 0.8, xi)));
        xi += 0.001;
        if (xi > 0.5) xi = -0.5;
    }
}
BENCHMARK(BM_GammaFromXi);

}  // namespace
