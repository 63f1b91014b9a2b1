#ifndef MURPHY_BENCHMARKS_HPP
#define MURPHY_BENCHMARKS_HPP

#include <span>
#include <string>
#include <vector>

#include "murphy/decomp.hpp"

namespace murphy {

// Feasible benchmark forecasters built from the expanding window of past
// realizations available at the forecast origin.

// Arithmetic mean of the history; needs at least 2 observations.
double unconditional_mean_forecast(std::span<const double> history);

// Interpolated sample tau-quantile of the history (same order-statistic
// convention as sample_quantile); needs at least 2 observations.
double unconditional_quantile_forecast(std::span<const double> history, double tau);

// OLS fit of y_t = c + phi * y_{t-1} on the history, then the fitted
// recursion iterated `steps` times from the last observed value. Constant
// histories make the design singular.
double ar1_forecast(std::span<const double> history, int steps);

struct BenchmarkKind {
    enum class Type { UncMean, UncQuantile, AR1 };
    Type type = Type::UncMean;
    double tau = 0.5;  // UncQuantile only

    static BenchmarkKind unc_mean();
    static BenchmarkKind unc_quantile(double tau);
    static BenchmarkKind ar1();

    std::string name() const;
};

// Expanding-window pseudo-out-of-sample benchmark series: the forecast for
// target index t uses realizations with index < t - horizon only (one new
// observation enters the window per period). Targets start once the window
// holds at least burn_in observations. Period labels, when given, must
// align with the realizations.
ForecastSeries rolling_benchmark_series(std::span<const double> realizations, int horizon,
                                        const BenchmarkKind& kind, int burn_in = 20,
                                        std::span<const std::string> periods = {});

}  // namespace murphy

#endif
