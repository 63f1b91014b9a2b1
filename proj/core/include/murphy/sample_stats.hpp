#ifndef MURPHY_SAMPLE_STATS_HPP
#define MURPHY_SAMPLE_STATS_HPP

#include <span>

namespace murphy {

double sample_mean(std::span<const double> values);

// Sample standard deviation with the n-1 denominator; 0 for n < 2.
double sample_sd(std::span<const double> values);

// Interpolated sample quantile: linear interpolation of order statistics
// at position 1 + (n-1)*tau (R's type 7). This is the quantile convention
// used everywhere in this library.
double sample_quantile(std::span<const double> values, double tau);

}  // namespace murphy

#endif
