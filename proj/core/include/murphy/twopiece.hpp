#ifndef MURPHY_TWOPIECE_HPP
#define MURPHY_TWOPIECE_HPP

#include <vector>

namespace murphy {

// Two-piece (split) normal distribution in the Bank of England
// parametrization: two half-normal kernels with scales
//   sigma1 = sigma / sqrt(1 - gamma)   (left of the mode)
//   sigma2 = sigma / sqrt(1 + gamma)   (right of the mode)
// joined at the common mode mu. gamma in (-1,1) is an inverse skew
// measure: gamma < 0 widens the right piece and pushes the mean above the
// mode. sigma is a dispersion parameter, not the standard deviation.
struct TwoPieceNormalParams {
    double mu = 0.0;
    double sigma = 1.0;
    double gamma = 0.0;

    TwoPieceNormalParams() = default;
    TwoPieceNormalParams(double mu_, double sigma_, double gamma_);

    double sigma1() const;
    double sigma2() const;
};

// The triple the BoE publishes: mode, dispersion, and the mean-minus-mode
// gap xi as the skew measure.
struct BoeReportedParams {
    double mu = 0.0;
    double sigma = 1.0;
    double xi = 0.0;

    BoeReportedParams() = default;
    BoeReportedParams(double mu_, double sigma_, double xi_);
};

namespace twopiece {

double density(const TwoPieceNormalParams& p, double x);

double cdf(const TwoPieceNormalParams& p, double x);

// Inverse of the cdf. For tau up to the mode's own probability level
// sigma1/(sigma1+sigma2) the left normal piece is inverted, otherwise the
// right one.
double quantile(const TwoPieceNormalParams& p, double tau);

// mu + sqrt(2/pi) * (sigma2 - sigma1)
double mean(const TwoPieceNormalParams& p);

// Recovers gamma from the reported (mu, sigma, xi):
//   beta = pi * xi^2 / (2 sigma^2),
//   gamma = -sign(xi) * sqrt(1 - ((sqrt(1+2*beta) - 1)/beta)^2).
// Throws when the implied gamma does not lie strictly inside (-1,1) at
// double precision (skew too extreme for the parametrization).
double gamma_from_xi(const BoeReportedParams& r);

TwoPieceNormalParams params_from_boe(const BoeReportedParams& r);

// gamma_from_xi composed with quantile for each requested tau; taus must
// be strictly increasing, the output is strictly increasing.
std::vector<double> boe_quantile_forecasts(const BoeReportedParams& r,
                                           const std::vector<double>& taus);

}  // namespace twopiece

}  // namespace murphy

#endif
