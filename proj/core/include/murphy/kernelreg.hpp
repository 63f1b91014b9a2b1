#ifndef MURPHY_KERNELREG_HPP
#define MURPHY_KERNELREG_HPP

#include <optional>
#include <span>
#include <vector>

#include "murphy/scoring.hpp"

namespace murphy {

// Gaussian kernel K(u) = exp(-u^2/2) / sqrt(2*pi).
double gaussian_kernel(double u);

// Minimum total kernel mass a neighborhood must carry before a local fit is
// attempted: 3 * K(3).
double default_min_effective_weight();

struct KernelFitConfig {
    // Fixed bandwidth. When absent, callers that need one run cross
    // validation over bandwidth_grid.
    std::optional<double> bandwidth;

    // Candidate bandwidths for cross validation, strictly increasing.
    // Empty means the default grid: 15 log-spaced values from 0.05 to 2
    // times the sample standard deviation of the regressor.
    std::vector<double> bandwidth_grid;

    // Number of contiguous CV folds; 0 requests leave-one-out. When unset,
    // squared loss uses leave-one-out and check loss uses 5 contiguous
    // folds (contiguous blocks respect serial dependence).
    std::optional<int> cv_folds;

    double min_effective_weight = 0.013295545235814023;  // 3 * K(3)
};

struct FittedCurve {
    std::vector<double> eval_points;
    std::vector<double> fitted;  // local intercept a(x) per eval point
    std::vector<double> slopes;  // local slope b(x); 0 for point-mass designs
    double bandwidth_used = 0.0;
    LossSpec loss;
};

// Local linear estimate of the conditional functional fixed by `loss`
// (mean for Squared, tau-quantile for Check): at each eval point x,
// (a, b) minimize sum_t s(a + b*(x_t - x), y_t) * K((x_t - x)/H) and the
// fitted value is a. The squared-loss fit solves the weighted normal
// equations; the check-loss fit minimizes the convex piecewise-linear
// objective exactly (subgradient certificate on exit).
//
// Requires config.bandwidth. Throws estimation_error when the kernel mass
// at some eval point falls below config.min_effective_weight, or when all
// effective mass sits at a single regressor value away from the eval
// point. Mass concentrated at the eval point itself degrades gracefully to
// a local constant fit.
FittedCurve fit_local_linear(const LossSpec& loss, std::span<const double> xs,
                             std::span<const double> ys, const KernelFitConfig& config,
                             std::span<const double> eval_points);

// Cross-validated bandwidth: the grid value minimizing the out-of-fold
// mean loss of held-out predictions, ties broken toward the largest tied
// bandwidth. Scores within 1e-9 of the data scale (variance of y for
// squared loss, standard deviation for check loss) count as tied, so a
// noise-free fit prefers the smoothest bandwidth.
double cv_bandwidth(const LossSpec& loss, std::span<const double> xs,
                    std::span<const double> ys, const KernelFitConfig& config);

// config.bandwidth if present, otherwise cv_bandwidth.
double resolve_bandwidth(const LossSpec& loss, std::span<const double> xs,
                         std::span<const double> ys, const KernelFitConfig& config);

}  // namespace murphy

#endif
