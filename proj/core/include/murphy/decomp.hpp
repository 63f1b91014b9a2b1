#ifndef MURPHY_DECOMP_HPP
#define MURPHY_DECOMP_HPP

#include <string>
#include <vector>

#include "murphy/kernelreg.hpp"
#include "murphy/scoring.hpp"

namespace murphy {

// Aligned forecast-observation pairs for one forecast horizon. Period
// labels are free-form strings ("2008Q4") kept in time order.
struct ForecastSeries {
    std::vector<std::string> periods;
    int horizon = 0;
    std::vector<double> forecasts;
    std::vector<double> realizations;

    void validate() const;
};

// Estimated decomposition of the mean score into
//   mean_score = unc - res + cal
// where unc is the score of the full-sample unconditional functional, res
// the reduction achieved by the autocalibrated (conditionally refitted)
// forecast, and cal the penalty the issued forecasts pay relative to it.
struct DecompositionResult {
    double mean_score = 0.0;
    double unc = 0.0;
    double res = 0.0;
    double cal = 0.0;
    std::size_t n = 0;
    double bandwidth = 0.0;
    LossSpec loss;
};

struct CalibrationCurve {
    std::vector<double> grid;         // forecast values
    std::vector<double> conditional;  // fitted conditional functional
    double unconditional = 0.0;       // horizontal reference line
    LossSpec loss;
};

// Estimates the decomposition for squared or check loss. The conditional
// functional is fitted by local linear kernel regression at every observed
// forecast value, with the bandwidth from config (fixed when given,
// cross-validated otherwise). The identity mean_score = unc - res + cal
// holds to rounding by construction.
DecompositionResult estimate_decomposition(const ForecastSeries& series,
                                           const LossSpec& loss,
                                           const KernelFitConfig& config);

// One decomposition per series; horizons must be distinct; order preserved.
std::vector<DecompositionResult> estimate_by_horizon(
    const std::vector<ForecastSeries>& multi, const LossSpec& loss,
    const KernelFitConfig& config);

// Conditional functional fitted over a uniform grid spanning the forecast
// range, for plotting against the diagonal. Uses the same bandwidth policy
// as estimate_decomposition so curve and decomposition describe one model.
CalibrationCurve calibration_curve(const ForecastSeries& series, const LossSpec& loss,
                                   const KernelFitConfig& config, int grid_size);

// res / unc, the R^2-like share of uncertainty resolved by the forecasts.
double normalized_resolution(const DecompositionResult& result);

}  // namespace murphy

#endif
