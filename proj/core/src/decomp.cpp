#include "murphy/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "murphy/errors.hpp"
#include "murphy/sample_stats.hpp"

namespace murphy {

namespace {

double unconditional_functional(const LossSpec& loss, std::span<const double> ys) {
    return loss.kind == LossKind::Squared ? sample_mean(ys) : sample_quantile(ys, loss.tau);
}

// Conditional fits at the observed forecast values; duplicates share one
// fit (identical eval points give identical fits).
std::vector<double> conditional_fits(const LossSpec& loss, const ForecastSeries& series,
                                     const KernelFitConfig& config, double bandwidth) {
    std::vector<double> unique_x(series.forecasts);
    std::sort(unique_x.begin(), unique_x.end());
    unique_x.erase(std::unique(unique_x.begin(), unique_x.end()), unique_x.end());

    KernelFitConfig cfg = config;
    cfg.bandwidth = bandwidth;
    const FittedCurve curve =
        fit_local_linear(loss, series.forecasts, series.realizations, cfg, unique_x);

    std::unordered_map<double, double> by_x;
    by_x.reserve(unique_x.size());
    for (std::size_t i = 0; i < unique_x.size(); ++i) by_x[unique_x[i]] = curve.fitted[i];

    std::vector<double> fits(series.forecasts.size());
    for (std::size_t t = 0; t < series.forecasts.size(); ++t) {
        fits[t] = by_x.at(series.forecasts[t]);
    }
    return fits;
}

}  // namespace

void ForecastSeries::validate() const {
    if (periods.size() != forecasts.size() || forecasts.size() != realizations.size()) {
        throw invalid_input("ForecastSeries: periods, forecasts and realizations must align");
    }
    if (forecasts.size() < 10) {
        throw invalid_input("ForecastSeries: need at least 10 forecast-observation pairs");
    }
    if (horizon < 0) {
        throw invalid_input("ForecastSeries: horizon must be nonnegative");
    }
    for (double v : forecasts) {
        if (!std::isfinite(v)) throw invalid_input("ForecastSeries: non-finite forecast");
    }
    for (double v : realizations) {
        if (!std::isfinite(v)) throw invalid_input("ForecastSeries: non-finite realization");
    }
    std::unordered_set<std::string> seen;
    seen.reserve(periods.size());
    for (const std::string& p : periods) {
        if (!seen.insert(p).second) {
            throw invalid_input("ForecastSeries: duplicate period label '" + p + "'");
        }
    }
}

DecompositionResult estimate_decomposition(const ForecastSeries& series,
                                           const LossSpec& loss,
                                           const KernelFitConfig& config) {
    if (loss.kind == LossKind::LogScoreNormal) {
        throw invalid_input(
            "estimate_decomposition: log score decompositions of density forecasts are "
            "not supported; use squared or check loss");
    }
    series.validate();

    const double bandwidth =
        resolve_bandwidth(loss, series.forecasts, series.realizations, config);
    const std::vector<double> fits = conditional_fits(loss, series, config, bandwidth);
    const double uncond = unconditional_functional(loss, series.realizations);

    const std::size_t n = series.forecasts.size();
    double score_sum = 0.0;
    double cond_sum = 0.0;
    double unc_sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double y = series.realizations[t];
        score_sum += loss_value(loss, series.forecasts[t], y);
        cond_sum += loss_value(loss, fits[t], y);
        unc_sum += loss_value(loss, uncond, y);
    }

    DecompositionResult result;
    result.mean_score = score_sum / static_cast<double>(n);
    result.unc = unc_sum / static_cast<double>(n);
    const double sharpness = cond_sum / static_cast<double>(n);
    result.res = result.unc - sharpness;
    result.cal = result.mean_score - sharpness;
    result.n = n;
    result.bandwidth = bandwidth;
    result.loss = loss;
    return result;
}

std::vector<DecompositionResult> estimate_by_horizon(
    const std::vector<ForecastSeries>& multi, const LossSpec& loss,
    const KernelFitConfig& config) {
    std::unordered_set<int> horizons;
    for (const ForecastSeries& s : multi) {
        if (!horizons.insert(s.horizon).second) {
            throw invalid_input("estimate_by_horizon: horizons must be distinct");
        }
    }
    std::vector<DecompositionResult> results;
    results.reserve(multi.size());
    for (const ForecastSeries& s : multi) {
        results.push_back(estimate_decomposition(s, loss, config));
    }
    return results;
}

CalibrationCurve calibration_curve(const ForecastSeries& series, const LossSpec& loss,
                                   const KernelFitConfig& config, int grid_size) {
    if (loss.kind == LossKind::LogScoreNormal) {
        throw invalid_input("calibration_curve: use squared or check loss");
    }
    if (grid_size < 2) {
        throw invalid_input("calibration_curve: grid_size must be at least 2");
    }
    series.validate();

    const auto [lo_it, hi_it] =
        std::minmax_element(series.forecasts.begin(), series.forecasts.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo)) {
        throw estimation_error(
            "calibration_curve: constant forecasts span a single grid point, no curve "
            "can be fitted");
    }

    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(grid_size));
    for (int i = 0; i < grid_size; ++i) {
        grid.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                static_cast<double>(grid_size - 1));
    }
    grid.back() = hi;
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const double bandwidth =
        resolve_bandwidth(loss, series.forecasts, series.realizations, config);
    KernelFitConfig cfg = config;
    cfg.bandwidth = bandwidth;
    const FittedCurve fitted =
        fit_local_linear(loss, series.forecasts, series.realizations, cfg, grid);

    CalibrationCurve curve;
    curve.grid = std::move(grid);
    curve.conditional = fitted.fitted;
    curve.unconditional = unconditional_functional(loss, series.realizations);
    curve.loss = loss;
    return curve;
}

double normalized_resolution(const DecompositionResult& result) {
    if (!(result.unc > 0.0)) {
        throw invalid_input("normalized_resolution: unc must be positive");
    }
    return result.res / result.unc;
}

}  // namespace murphy
