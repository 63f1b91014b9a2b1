#include "murphy/sample_stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "murphy/errors.hpp"

namespace murphy {

double sample_mean(std::span<const double> values) {
    if (values.empty()) {
        throw invalid_input("sample_mean: empty sample");
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    const double m = sample_mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

double sample_quantile(std::span<const double> values, double tau) {
    if (values.empty()) {
        throw invalid_input("sample_quantile: empty sample");
    }
    if (!(tau > 0.0 && tau < 1.0)) {
        throw invalid_input("sample_quantile: tau must lie strictly inside (0,1)");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double pos = (static_cast<double>(n) - 1.0) * tau;
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= n) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace murphy
