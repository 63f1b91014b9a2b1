#include "murphy/kernelreg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "murphy/errors.hpp"
#include "murphy/sample_stats.hpp"

namespace murphy {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

// Beyond this many bandwidths from the eval point the Gaussian weight is
// below 4e-17 relative to K(0) and cannot move a fit at double precision.
constexpr double kWindowRadius = 8.6;

struct SortedSample {
    std::vector<double> x;
    std::vector<double> y;

    SortedSample(std::span<const double> xs, std::span<const double> ys) {
        const std::size_t n = xs.size();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        // Order by (x, y) so fits are invariant under permutation of the
        // input sample.
        std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            if (xs[i] != xs[j]) return xs[i] < xs[j];
            return ys[i] < ys[j];
        });
        x.resize(n);
        y.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            x[k] = xs[order[k]];
            y[k] = ys[order[k]];
        }
    }
};

struct LocalFit {
    double a = 0.0;
    double b = 0.0;
    bool point_mass = false;
    // Weighted sums reused by the leave-one-out shortcut.
    double weight_sum = 0.0;
    double dbar = 0.0;
    double spread = 0.0;  // sum w * (d - dbar)^2
};

struct WindowSums {
    std::size_t lo = 0, hi = 0;
    double s0 = 0.0, sd = 0.0, sy = 0.0;
};

WindowSums window_sums(const SortedSample& s, double x, double bandwidth) {
    WindowSums ws;
    const double radius = kWindowRadius * bandwidth;
    ws.lo = static_cast<std::size_t>(
        std::lower_bound(s.x.begin(), s.x.end(), x - radius) - s.x.begin());
    ws.hi = static_cast<std::size_t>(
        std::upper_bound(s.x.begin(), s.x.end(), x + radius) - s.x.begin());
    for (std::size_t i = ws.lo; i < ws.hi; ++i) {
        const double u = (s.x[i] - x) / bandwidth;
        const double w = kInvSqrt2Pi * std::exp(-0.5 * u * u);
        ws.s0 += w;
        ws.sd += w * (s.x[i] - x);
        ws.sy += w * s.y[i];
    }
    return ws;
}

[[noreturn]] void throw_degenerate(double x, double mass, double required) {
    throw estimation_error("degenerate kernel neighborhood at eval point x=" +
                           std::to_string(x) + ": effective weight " + std::to_string(mass) +
                           " below " + std::to_string(required));
}

// Minimizer of sum_i w_i * rho_tau(y_i - a) over a: the smallest order
// statistic whose cumulative weight reaches tau * (total weight).
double weighted_check_quantile(std::vector<std::pair<double, double>>& yw, double tau) {
    std::sort(yw.begin(), yw.end());
    double total = 0.0;
    for (const auto& p : yw) total += p.second;
    const double target = tau * total;
    double cum = 0.0;
    for (const auto& p : yw) {
        cum += p.second;
        if (cum >= target) return p.first;
    }
    return yw.back().first;
}

// ---------------------------------------------------------------------------
// Exact minimization of the weighted check-loss objective
//   F(a,b) = sum_i w_i * rho_tau(y_i - a - b * d_i)
// F is convex piecewise linear. Starting from the weighted least-squares
// fit, the solver repeatedly runs exact line searches along the coordinate
// axes and along the kink lines through the current point until no
// direction has a negative one-sided derivative. Checking the kink
// directions matters: coordinate moves alone can stall at a vertex that is
// not the global minimum.
// ---------------------------------------------------------------------------

struct CheckProblem {
    std::span<const double> d;
    std::span<const double> y;
    std::span<const double> w;
    double tau = 0.5;
};

double check_objective(const CheckProblem& p, double a, double b) {
    double obj = 0.0;
    for (std::size_t i = 0; i < p.d.size(); ++i) {
        const double u = p.y[i] - a - b * p.d[i];
        obj += p.w[i] * (u >= 0.0 ? p.tau * u : (p.tau - 1.0) * u);
    }
    return obj;
}

// Residuals within rounding noise of zero must be treated as exactly
// active, otherwise their sign flips drive an endless dance of zero-length
// steps around a vertex.
struct CheckState {
    std::vector<double> residuals;
    std::vector<char> active;

    void refresh(const CheckProblem& p, double a, double b) {
        const std::size_t n = p.d.size();
        residuals.resize(n);
        active.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = p.y[i] - a - b * p.d[i];
            residuals[i] = r;
            const double scale = std::max({std::fabs(p.y[i]), std::fabs(a),
                                           std::fabs(b * p.d[i]), 1e-300});
            active[i] = std::fabs(r) <= 1e-11 * scale ? 1 : 0;
        }
    }
};

// One-sided derivative of F at the current point along (qa,qb); active
// points contribute their worst-case subgradient term, which makes the
// reported slope an upper bound on the true one-sided derivative.
double directional_derivative(const CheckProblem& p, const CheckState& state, double qa,
                              double qb, std::vector<double>& deltas) {
    const std::size_t n = p.d.size();
    deltas.resize(n);
    double g = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double delta = qa + qb * p.d[i];
        deltas[i] = delta;
        if (state.active[i]) {
            g += p.w[i] * (delta > 0.0 ? delta * (1.0 - p.tau) : -delta * p.tau);
        } else if (state.residuals[i] > 0.0) {
            g -= p.w[i] * p.tau * delta;
        } else {
            g -= p.w[i] * (p.tau - 1.0) * delta;
        }
    }
    return g;
}

// Exact minimization of s -> F((a,b) + s*(qa,qb)) for s >= 0 given the
// slope at 0+. The active points' post-crossing slope is already part of
// the slope argument, so only inactive residuals contribute breakpoints.
double line_search(const CheckProblem& p, const CheckState& state,
                   std::span<const double> deltas, double slope) {
    std::vector<std::pair<double, double>> breaks;  // (step, slope jump)
    breaks.reserve(state.residuals.size());
    for (std::size_t i = 0; i < state.residuals.size(); ++i) {
        if (state.active[i]) continue;
        const double delta = deltas[i];
        if (delta == 0.0) continue;
        const double s = state.residuals[i] / delta;
        if (s > 0.0 && std::isfinite(s)) {
            breaks.emplace_back(s, p.w[i] * std::fabs(delta));
        }
    }
    std::sort(breaks.begin(), breaks.end());
    double g = slope;
    for (const auto& [s, jump] : breaks) {
        g += jump;
        if (g >= 0.0) return s;
    }
    throw std::logic_error("check-loss fit: descent direction never turned uphill");
}

struct Direction {
    double qa, qb;
};

std::pair<double, double> solve_check(const CheckProblem& p, double a0, double b0) {
    double a = a0;
    double b = b0;
    const std::size_t n = p.d.size();
    CheckState state;
    std::vector<double> deltas;

    double weight_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) weight_total += p.w[i];
    const double tol = 1e-11 * weight_total;

    double best_obj = check_objective(p, a, b);
    for (int iter = 0; iter < 1000; ++iter) {
        state.refresh(p, a, b);

        std::vector<Direction> dirs = {{1.0, 0.0}, {0.0, 1.0}};
        std::size_t active_count = 0;
        std::size_t last_active = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (state.active[i]) {
                dirs.push_back({-p.d[i], 1.0});
                ++active_count;
                last_active = i;
            }
        }
        if (active_count == 1) dirs.push_back({1.0, p.d[last_active]});

        bool moved = false;
        for (const Direction& dir : dirs) {
            for (double sign : {1.0, -1.0}) {
                double qa = sign * dir.qa;
                double qb = sign * dir.qb;
                // Normalize so the largest residual decay rate is 1;
                // slopes and steps then share one scale.
                double zmax = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    zmax = std::max(zmax, std::fabs(qa + qb * p.d[i]));
                }
                if (!(zmax > 0.0)) continue;
                qa /= zmax;
                qb /= zmax;
                const double slope = directional_derivative(p, state, qa, qb, deltas);
                if (slope < -tol) {
                    const double step = line_search(p, state, deltas, slope);
                    const double na = a + step * qa;
                    const double nb = b + step * qb;
                    const double obj = check_objective(p, na, nb);
                    if (obj >= best_obj) {
                        // Rounding has exhausted the attainable descent.
                        return {a, b};
                    }
                    a = na;
                    b = nb;
                    best_obj = obj;
                    moved = true;
                    break;
                }
            }
            if (moved) break;
        }
        if (!moved) return {a, b};
    }
    throw std::logic_error("check-loss fit did not converge");
}

LocalFit fit_at(const LossSpec& loss, const SortedSample& s, double bandwidth, double x,
                double min_effective_weight) {
    const WindowSums ws = window_sums(s, x, bandwidth);
    LocalFit fit;
    fit.weight_sum = ws.s0;
    if (!(ws.s0 >= min_effective_weight)) {
        throw_degenerate(x, ws.s0, min_effective_weight);
    }
    const double dbar = ws.sd / ws.s0;
    const double ybar = ws.sy / ws.s0;
    fit.dbar = dbar;

    std::vector<double> d, yv, w;
    d.reserve(ws.hi - ws.lo);
    yv.reserve(ws.hi - ws.lo);
    w.reserve(ws.hi - ws.lo);
    double sdd = 0.0, sdy = 0.0;
    for (std::size_t i = ws.lo; i < ws.hi; ++i) {
        const double di = s.x[i] - x;
        const double u = di / bandwidth;
        const double wi = kInvSqrt2Pi * std::exp(-0.5 * u * u);
        d.push_back(di);
        yv.push_back(s.y[i]);
        w.push_back(wi);
        sdd += wi * (di - dbar) * (di - dbar);
        sdy += wi * (di - dbar) * (s.y[i] - ybar);
    }
    fit.spread = sdd;

    const double spread_floor = 1e-9 * std::max(std::fabs(dbar), bandwidth);
    if (sdd <= spread_floor * spread_floor * ws.s0) {
        // All effective mass sits at a single regressor value. At the eval
        // point itself the local constant is still identified; anywhere
        // else the slope is arbitrary and the fit meaningless.
        if (std::fabs(dbar) > 1e-9 * bandwidth) {
            throw estimation_error(
                "degenerate kernel neighborhood at eval point x=" + std::to_string(x) +
                ": all effective weight concentrated away from the eval point");
        }
        fit.point_mass = true;
        fit.b = 0.0;
        if (loss.kind == LossKind::Squared) {
            fit.a = ybar;
        } else {
            std::vector<std::pair<double, double>> yw;
            yw.reserve(yv.size());
            for (std::size_t i = 0; i < yv.size(); ++i) yw.emplace_back(yv[i], w[i]);
            fit.a = weighted_check_quantile(yw, loss.tau);
        }
        return fit;
    }

    const double b_ls = sdy / sdd;
    const double a_ls = ybar - b_ls * dbar;
    if (loss.kind == LossKind::Squared) {
        fit.a = a_ls;
        fit.b = b_ls;
        return fit;
    }

    CheckProblem problem{d, yv, w, loss.tau};
    auto [a, b] = solve_check(problem, a_ls, b_ls);
    fit.a = a;
    fit.b = b;
    return fit;
}

void validate_sample(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw invalid_input("kernel fit: xs and ys must have equal length");
    }
    if (xs.size() < 3) {
        throw invalid_input("kernel fit: need at least 3 observations");
    }
    for (double v : xs) {
        if (!std::isfinite(v)) throw invalid_input("kernel fit: non-finite regressor");
    }
    for (double v : ys) {
        if (!std::isfinite(v)) throw invalid_input("kernel fit: non-finite response");
    }
}

std::vector<double> grid_or_default(std::span<const double> xs,
                                    const KernelFitConfig& config) {
    if (!config.bandwidth_grid.empty()) {
        for (double h : config.bandwidth_grid) {
            if (!(h > 0.0) || !std::isfinite(h)) {
                throw invalid_input("bandwidth grid values must be positive and finite");
            }
        }
        for (std::size_t i = 1; i < config.bandwidth_grid.size(); ++i) {
            if (!(config.bandwidth_grid[i] > config.bandwidth_grid[i - 1])) {
                throw invalid_input("bandwidth grid must be strictly increasing");
            }
        }
        return config.bandwidth_grid;
    }
    const double sd = sample_sd(xs);
    if (!(sd > 0.0)) {
        throw estimation_error(
            "bandwidth selection failed: zero regressor variance, supply a fixed bandwidth");
    }
    std::vector<double> grid(15);
    const double lo = 0.05 * sd;
    const double hi = 2.0 * sd;
    const double step = std::log(hi / lo) / 14.0;
    for (int i = 0; i < 15; ++i) grid[i] = lo * std::exp(step * i);
    return grid;
}

// Leave-one-out CV score for squared loss via the linear-smoother identity
// yhat_{-t}(x_t) = (yhat_t - h_t * y_t) / (1 - h_t); algebraically equal to
// refitting without observation t.
// TODO: per-bandwidth cost is O(n^2); a sliding-window update of the five
// weighted sums would bring it to O(n log n) for long series.
double loo_squared_score(const SortedSample& s, double bandwidth,
                         double min_effective_weight) {
    const std::size_t n = s.x.size();
    double total = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const LocalFit fit =
            fit_at(LossSpec::squared(), s, bandwidth, s.x[t], min_effective_weight);
        const double own_weight = kInvSqrt2Pi;  // K(0), d_t = 0
        double leverage;
        if (fit.point_mass) {
            leverage = own_weight / fit.weight_sum;
        } else {
            leverage =
                own_weight * (1.0 / fit.weight_sum + fit.dbar * fit.dbar / fit.spread);
        }
        if (1.0 - leverage <= 1e-10) {
            throw estimation_error("leave-one-out prediction undefined: leverage ~ 1");
        }
        const double pred = (fit.a - leverage * s.y[t]) / (1.0 - leverage);
        const double err = pred - s.y[t];
        total += err * err;
    }
    return total / static_cast<double>(n);
}

double kfold_score(const LossSpec& loss, std::span<const double> xs,
                   std::span<const double> ys, double bandwidth,
                   double min_effective_weight, int folds) {
    const std::size_t n = xs.size();
    const std::size_t k = static_cast<std::size_t>(folds);
    double total = 0.0;
    std::size_t begin = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = n / k + (f < n % k ? 1 : 0);
        const std::size_t end = begin + size;
        std::vector<double> train_x, train_y, hold_x;
        train_x.reserve(n - size);
        train_y.reserve(n - size);
        hold_x.reserve(size);
        for (std::size_t i = 0; i < n; ++i) {
            if (i >= begin && i < end) {
                hold_x.push_back(xs[i]);
            } else {
                train_x.push_back(xs[i]);
                train_y.push_back(ys[i]);
            }
        }
        if (train_x.size() < 3) {
            throw invalid_input("cross validation: training folds too small");
        }
        KernelFitConfig cfg;
        cfg.bandwidth = bandwidth;
        cfg.min_effective_weight = min_effective_weight;
        const FittedCurve curve = fit_local_linear(loss, train_x, train_y, cfg, hold_x);
        for (std::size_t j = 0; j < hold_x.size(); ++j) {
            total += loss_value(loss, curve.fitted[j], ys[begin + j]);
        }
        begin = end;
    }
    return total / static_cast<double>(n);
}

// Leave-one-out by explicit refit; used for check loss when requested.
double loo_refit_score(const LossSpec& loss, std::span<const double> xs,
                       std::span<const double> ys, double bandwidth,
                       double min_effective_weight) {
    const std::size_t n = xs.size();
    double total = 0.0;
    std::vector<double> train_x(n - 1), train_y(n - 1);
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == t) continue;
            train_x[k] = xs[i];
            train_y[k] = ys[i];
            ++k;
        }
        KernelFitConfig cfg;
        cfg.bandwidth = bandwidth;
        cfg.min_effective_weight = min_effective_weight;
        const std::vector<double> hold{xs[t]};
        const FittedCurve curve = fit_local_linear(loss, train_x, train_y, cfg, hold);
        total += loss_value(loss, curve.fitted[0], ys[t]);
    }
    return total / static_cast<double>(n);
}

}  // namespace

double gaussian_kernel(double u) {
    if (!std::isfinite(u)) throw invalid_input("gaussian_kernel: non-finite argument");
    return kInvSqrt2Pi * std::exp(-0.5 * u * u);
}

double default_min_effective_weight() { return 3.0 * gaussian_kernel(3.0); }

FittedCurve fit_local_linear(const LossSpec& loss, std::span<const double> xs,
                             std::span<const double> ys, const KernelFitConfig& config,
                             std::span<const double> eval_points) {
    if (loss.kind == LossKind::LogScoreNormal) {
        throw invalid_input("fit_local_linear: loss must be squared or check");
    }
    validate_sample(xs, ys);
    if (!config.bandwidth.has_value()) {
        throw invalid_input("fit_local_linear: config.bandwidth is required");
    }
    const double bandwidth = *config.bandwidth;
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
        throw invalid_input("fit_local_linear: bandwidth must be positive and finite");
    }
    for (double e : eval_points) {
        if (!std::isfinite(e)) throw invalid_input("fit_local_linear: non-finite eval point");
    }

    const SortedSample sorted(xs, ys);
    FittedCurve curve;
    curve.eval_points.assign(eval_points.begin(), eval_points.end());
    curve.fitted.reserve(eval_points.size());
    curve.slopes.reserve(eval_points.size());
    curve.bandwidth_used = bandwidth;
    curve.loss = loss;
    for (double x : eval_points) {
        const LocalFit fit = fit_at(loss, sorted, bandwidth, x, config.min_effective_weight);
        curve.fitted.push_back(fit.a);
        curve.slopes.push_back(fit.b);
    }
    return curve;
}

double cv_bandwidth(const LossSpec& loss, std::span<const double> xs,
                    std::span<const double> ys, const KernelFitConfig& config) {
    if (loss.kind == LossKind::LogScoreNormal) {
        throw invalid_input("cv_bandwidth: loss must be squared or check");
    }
    validate_sample(xs, ys);
    const std::vector<double> grid = grid_or_default(xs, config);
    const int folds = config.cv_folds.value_or(loss.kind == LossKind::Squared ? 0 : 5);
    if (folds < 0 || (folds > 0 && folds < 2)) {
        throw invalid_input("cv_bandwidth: folds must be 0 (leave-one-out) or >= 2");
    }
    if (folds > 0 && static_cast<std::size_t>(folds) > xs.size()) {
        throw invalid_input("cv_bandwidth: more folds than observations");
    }

    const SortedSample sorted(xs, ys);
    std::vector<double> scores(grid.size(), std::numeric_limits<double>::infinity());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        try {
            if (folds == 0) {
                scores[g] = loss.kind == LossKind::Squared
                                ? loo_squared_score(sorted, grid[g], config.min_effective_weight)
                                : loo_refit_score(loss, xs, ys, grid[g],
                                                  config.min_effective_weight);
            } else {
                scores[g] =
                    kfold_score(loss, xs, ys, grid[g], config.min_effective_weight, folds);
            }
        } catch (const estimation_error&) {
            // Bandwidth too small for the data layout; drop it from the grid.
        }
    }

    double best = std::numeric_limits<double>::infinity();
    for (double s : scores) best = std::min(best, s);
    if (!std::isfinite(best)) {
        throw estimation_error("bandwidth selection failed: all grid values degenerate");
    }
    const double sd = sample_sd(ys);
    const double tie_tol =
        loss.kind == LossKind::Squared ? 1e-9 * sd * sd : 1e-9 * sd;
    double chosen = -1.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (scores[g] <= best + tie_tol) chosen = std::max(chosen, grid[g]);
    }
    return chosen;
}

double resolve_bandwidth(const LossSpec& loss, std::span<const double> xs,
                         std::span<const double> ys, const KernelFitConfig& config) {
    if (config.bandwidth.has_value()) {
        if (!(*config.bandwidth > 0.0) || !std::isfinite(*config.bandwidth)) {
            throw invalid_input("bandwidth must be positive and finite");
        }
        return *config.bandwidth;
    }
    return cv_bandwidth(loss, xs, ys, config);
}

}  // namespace murphy
