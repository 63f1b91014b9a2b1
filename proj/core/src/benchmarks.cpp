#include "murphy/benchmarks.hpp"

#include <cmath>

#include "murphy/errors.hpp"
#include "murphy/sample_stats.hpp"

namespace murphy {

namespace {
void require_finite_series(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw invalid_input(std::string(what) + ": non-finite value");
        }
    }
}
}  // namespace

double unconditional_mean_forecast(std::span<const double> history) {
    if (history.size() < 2) {
        throw invalid_input("unconditional_mean_forecast: need at least 2 observations");
    }
    require_finite_series(history, "unconditional_mean_forecast");
    return sample_mean(history);
}

double unconditional_quantile_forecast(std::span<const double> history, double tau) {
    if (history.size() < 2) {
        throw invalid_input("unconditional_quantile_forecast: need at least 2 observations");
    }
    require_finite_series(history, "unconditional_quantile_forecast");
    return sample_quantile(history, tau);
}

double ar1_forecast(std::span<const double> history, int steps) {
    if (history.size() < 3) {
        throw invalid_input("ar1_forecast: need at least 3 observations");
    }
    if (steps < 1) {
        throw invalid_input("ar1_forecast: steps must be at least 1");
    }
    require_finite_series(history, "ar1_forecast");

    const std::size_t m = history.size() - 1;  // regression pairs
    double mean_lag = 0.0, mean_cur = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        mean_lag += history[t];
        mean_cur += history[t + 1];
    }
    mean_lag /= static_cast<double>(m);
    mean_cur /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        const double dx = history[t] - mean_lag;
        sxx += dx * dx;
        sxy += dx * (history[t + 1] - mean_cur);
    }
    if (!(sxx > 0.0)) {
        throw estimation_error("ar1_forecast: constant history, singular design");
    }
    const double phi = sxy / sxx;
    const double intercept = mean_cur - phi * mean_lag;

    double forecast = history.back();
    for (int s = 0; s < steps; ++s) forecast = intercept + phi * forecast;
    return forecast;
}

BenchmarkKind BenchmarkKind::unc_mean() { return BenchmarkKind{Type::UncMean, 0.5}; }

BenchmarkKind BenchmarkKind::unc_quantile(double tau) {
    if (!(tau > 0.0 && tau < 1.0)) {
        throw invalid_input("BenchmarkKind: tau must lie strictly inside (0,1)");
    }
    return BenchmarkKind{Type::UncQuantile, tau};
}

BenchmarkKind BenchmarkKind::ar1() { return BenchmarkKind{Type::AR1, 0.5}; }

std::string BenchmarkKind::name() const {
    switch (type) {
        case Type::UncMean: return "unc-mean";
        case Type::UncQuantile: return "unc-quantile";
        case Type::AR1: return "ar1";
    }
    return "unknown";
}

ForecastSeries rolling_benchmark_series(std::span<const double> realizations, int horizon,
                                        const BenchmarkKind& kind, int burn_in,
                                        std::span<const std::string> periods) {
    if (horizon < 0) {
        throw invalid_input("rolling_benchmark_series: horizon must be nonnegative");
    }
    const int min_window = kind.type == BenchmarkKind::Type::AR1 ? 3 : 2;
    if (burn_in < min_window) {
        throw invalid_input("rolling_benchmark_series: burn_in too small for this benchmark");
    }
    require_finite_series(realizations, "rolling_benchmark_series");
    if (!periods.empty() && periods.size() != realizations.size()) {
        throw invalid_input("rolling_benchmark_series: period labels must align");
    }

    const std::size_t n = realizations.size();
    const std::size_t first_target = static_cast<std::size_t>(burn_in + horizon);
    if (first_target + 10 > n) {
        throw invalid_input(
            "rolling_benchmark_series: insufficient data after burn-in (need at least 10 "
            "forecast-observation pairs)");
    }

    ForecastSeries series;
    series.horizon = horizon;
    for (std::size_t t = first_target; t < n; ++t) {
        const std::span<const double> window =
            realizations.subspan(0, t - static_cast<std::size_t>(horizon));
        double forecast = 0.0;
        switch (kind.type) {
            case BenchmarkKind::Type::UncMean:
                forecast = unconditional_mean_forecast(window);
                break;
            case BenchmarkKind::Type::UncQuantile:
                forecast = unconditional_quantile_forecast(window, kind.tau);
                break;
            case BenchmarkKind::Type::AR1:
                forecast = ar1_forecast(window, horizon + 1);
                break;
        }
        series.forecasts.push_back(forecast);
        series.realizations.push_back(realizations[t]);
        series.periods.push_back(periods.empty() ? "t" + std::to_string(t + 1)
                                                 : periods[t]);
    }
    return series;
}

}  // namespace murphy
