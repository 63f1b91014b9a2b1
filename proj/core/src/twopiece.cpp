#include "murphy/twopiece.hpp"

#include <cmath>

#include "murphy/errors.hpp"
#include "murphy/normal.hpp"

namespace murphy {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310002;
constexpr double kSqrt2OverPi = 0.7978845608028654;
constexpr double kPi = 3.141592653589793;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw invalid_input(std::string(what) + ": non-finite value");
    }
}
}  // namespace

TwoPieceNormalParams::TwoPieceNormalParams(double mu_, double sigma_, double gamma_)
    : mu(mu_), sigma(sigma_), gamma(gamma_) {
    require_finite(mu, "TwoPieceNormalParams.mu");
    require_finite(sigma, "TwoPieceNormalParams.sigma");
    require_finite(gamma, "TwoPieceNormalParams.gamma");
    if (!(sigma > 0.0)) {
        throw invalid_input("TwoPieceNormalParams: sigma must be positive");
    }
    if (!(gamma > -1.0 && gamma < 1.0)) {
        throw invalid_input("TwoPieceNormalParams: gamma must lie strictly inside (-1,1)");
    }
}

double TwoPieceNormalParams::sigma1() const { return sigma / std::sqrt(1.0 - gamma); }

double TwoPieceNormalParams::sigma2() const { return sigma / std::sqrt(1.0 + gamma); }

BoeReportedParams::BoeReportedParams(double mu_, double sigma_, double xi_)
    : mu(mu_), sigma(sigma_), xi(xi_) {
    require_finite(mu, "BoeReportedParams.mu");
    require_finite(sigma, "BoeReportedParams.sigma");
    require_finite(xi, "BoeReportedParams.xi");
    if (!(sigma > 0.0)) {
        throw invalid_input("BoeReportedParams: sigma must be positive");
    }
}

namespace twopiece {

double density(const TwoPieceNormalParams& p, double x) {
    require_finite(x, "twopiece::density x");
    const double norm_const =
        2.0 / (1.0 / std::sqrt(1.0 - p.gamma) + 1.0 / std::sqrt(1.0 + p.gamma));
    const double z = (x - p.mu) / p.sigma;
    const double piece = x <= p.mu ? 1.0 - p.gamma : 1.0 + p.gamma;
    return norm_const / (kSqrt2Pi * p.sigma) * std::exp(-0.5 * piece * z * z);
}

double cdf(const TwoPieceNormalParams& p, double x) {
    require_finite(x, "twopiece::cdf x");
    const double s1 = p.sigma1();
    const double s2 = p.sigma2();
    const double mode_prob = s1 / (s1 + s2);
    if (x <= p.mu) {
        return 2.0 * mode_prob * norm_cdf((x - p.mu) / s1);
    }
    return 2.0 * (1.0 - mode_prob) * norm_cdf((x - p.mu) / s2) + (2.0 * mode_prob - 1.0);
}

double quantile(const TwoPieceNormalParams& p, double tau) {
    if (!(tau > 0.0 && tau < 1.0)) {
        throw invalid_input("twopiece::quantile: tau must lie strictly inside (0,1)");
    }
    const double s1 = p.sigma1();
    const double s2 = p.sigma2();
    const double mode_prob = s1 / (s1 + s2);
    if (tau <= mode_prob) {
        return p.mu + s1 * norm_quantile(tau / (2.0 * mode_prob));
    }
    return p.mu + s2 * norm_quantile((tau + 1.0 - 2.0 * mode_prob) /
                                     (2.0 * (1.0 - mode_prob)));
}

double mean(const TwoPieceNormalParams& p) {
    return p.mu + kSqrt2OverPi * (p.sigma2() - p.sigma1());
}

double gamma_from_xi(const BoeReportedParams& r) {
    if (r.xi == 0.0) return 0.0;
    const double beta = kPi / (2.0 * r.sigma * r.sigma) * r.xi * r.xi;
    // (sqrt(1+2b)-1)/b written without cancellation for small b.
    const double ratio = 2.0 / (std::sqrt(1.0 + 2.0 * beta) + 1.0);
    const double gamma2 = 1.0 - ratio * ratio;
    const double magnitude = std::sqrt(gamma2);
    if (!(magnitude < 1.0)) {
        throw invalid_input(
            "gamma_from_xi: skew too extreme for the two-piece normal family "
            "(implied gamma outside (-1,1))");
    }
    return r.xi > 0.0 ? -magnitude : magnitude;
}

TwoPieceNormalParams params_from_boe(const BoeReportedParams& r) {
    return TwoPieceNormalParams(r.mu, r.sigma, gamma_from_xi(r));
}

std::vector<double> boe_quantile_forecasts(const BoeReportedParams& r,
                                           const std::vector<double>& taus) {
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (!(taus[i] > 0.0 && taus[i] < 1.0)) {
            throw invalid_input("boe_quantile_forecasts: taus must lie inside (0,1)");
        }
        if (i > 0 && !(taus[i] > taus[i - 1])) {
            throw invalid_input("boe_quantile_forecasts: taus must be strictly increasing");
        }
    }
    const TwoPieceNormalParams p = params_from_boe(r);
    std::vector<double> out;
    out.reserve(taus.size());
    for (double tau : taus) out.push_back(quantile(p, tau));
    return out;
}

}  // namespace twopiece

}  // namespace murphy
