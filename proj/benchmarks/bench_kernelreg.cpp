#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "murphy/decomp.hpp"
#include "murphy/kernelreg.hpp"

namespace {

struct Sample {
    std::vector<double> xs, ys;
};

Sample make_sample(std::size_t n) {
    std::mt19937_64 eng(12345);
    auto uniform = [&]() {
        return static_cast<double>(eng() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    };
    Sample s;
    s.xs.reserve(n);
    s.ys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 6.0 * uniform() - 3.0;
        s.xs.push_back(x);
        s.ys.push_back(0.5 * x + 2.0 * uniform() - 1.0);
    }
    return s;
}

murphy::KernelFitConfig fixed(double h) {
    murphy::KernelFitConfig cfg;
    cfg.bandwidth = h;
    return cfg;
}

void BM_SquaredFit(benchmark::State& state) {
    const Sample s = make_sample(static_cast<std::size_t>(state.range(0)));
    const std::vector<double> eval = {-2.0, -1.0, 0.0, 1.0, 2.0};
    for (auto _ : state) {
        auto curve = murphy::fit_local_linear(murphy::LossSpec::squared(), s.xs, s.ys,
                                              fixed(0.4), eval);
        benchmark::DoNotOptimize(curve.fitted.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SquaredFit)->Range(256, 16384)->Complexity();

void BM_CheckFit(benchmark::State& state) {
    const Sample s = make_sample(static_cast<std::size_t>(state.range(0)));
    const std::vector<double> eval = {-2.0, -1.0, 0.0, 1.0, 2.0};
    for (auto _ : state) {
        auto curve = murphy::fit_local_linear(murphy::LossSpec::check(0.75), s.xs, s.ys,
                                              fixed(0.4), eval);
        benchmark::DoNotOptimize(curve.fitted.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CheckFit)->Range(256, 4096)->Complexity();

void BM_Decomposition(benchmark::State& state) {
    const Sample s = make_sample(static_cast<std::size_t>(state.range(0)));
    murphy::ForecastSeries series;
    series.horizon = 0;
    series.forecasts = s.xs;
    series.realizations = s.ys;
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
        series.periods.push_back("t" + std::to_string(i));
    }
    for (auto _ : state) {
        auto result = murphy::estimate_decomposition(series, murphy::LossSpec::squared(),
                                                     fixed(0.4));
        benchmark::DoNotOptimize(result.mean_score);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Decomposition)->Range(256, 8192)->Complexity();

}  // namespace
