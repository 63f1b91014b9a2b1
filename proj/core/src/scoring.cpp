#include "murphy/scoring.hpp"

#include <cmath>

#include "murphy/errors.hpp"

namespace murphy {

namespace {
constexpr double kLog2Pi = 1.8378770664093453;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw invalid_input(std::string(what) + ": non-finite value");
    }
}
}  // namespace

LossSpec LossSpec::squared() { return LossSpec{LossKind::Squared, 0.0}; }

LossSpec LossSpec::check(double tau) {
    if (!(tau > 0.0 && tau < 1.0)) {
        throw invalid_input("LossSpec::check: tau must lie strictly inside (0,1)");
    }
    return LossSpec{LossKind::Check, tau};
}

LossSpec LossSpec::log_score_normal() { return LossSpec{LossKind::LogScoreNormal, 0.0}; }

std::string LossSpec::name() const {
    switch (kind) {
        case LossKind::Squared:
            return "squared";
        case LossKind::Check:
            return "check";
        case LossKind::LogScoreNormal:
            return "log-score-normal";
    }
    return "unknown";
}

NormalParams::NormalParams(double mu_, double sigma2_) : mu(mu_), sigma2(sigma2_) {
    require_finite(mu, "NormalParams.mu");
    require_finite(sigma2, "NormalParams.sigma2");
    if (!(sigma2 > 0.0)) {
        throw invalid_input("NormalParams: sigma2 must be positive");
    }
}

double squared_error(double forecast, double outcome) {
    require_finite(forecast, "squared_error forecast");
    require_finite(outcome, "squared_error outcome");
    const double d = forecast - outcome;
    return d * d;
}

double check_loss(double tau, double forecast, double outcome) {
    if (!(tau > 0.0 && tau < 1.0)) {
        throw invalid_input("check_loss: tau must lie strictly inside (0,1)");
    }
    require_finite(forecast, "check_loss forecast");
    require_finite(outcome, "check_loss outcome");
    const double u = outcome - forecast;
    return u >= 0.0 ? tau * u : (tau - 1.0) * u;
}

double log_score_normal(const NormalParams& pred, double outcome) {
    require_finite(pred.mu, "log_score_normal mu");
    require_finite(outcome, "log_score_normal outcome");
    if (!(pred.sigma2 > 0.0)) {
        throw invalid_input("log_score_normal: sigma2 must be positive");
    }
    const double z2 = (outcome - pred.mu) * (outcome - pred.mu) / pred.sigma2;
    return 0.5 * (kLog2Pi + std::log(pred.sigma2) + z2);
}

double loss_value(const LossSpec& loss, double forecast, double outcome) {
    switch (loss.kind) {
        case LossKind::Squared:
            return squared_error(forecast, outcome);
        case LossKind::Check:
            return check_loss(loss.tau, forecast, outcome);
        case LossKind::LogScoreNormal:
            break;
    }
    throw invalid_input("loss_value: log score needs a density forecast, not a point");
}

double normal_entropy(double sigma2) {
    require_finite(sigma2, "normal_entropy sigma2");
    if (!(sigma2 > 0.0)) {
        throw invalid_input("normal_entropy: sigma2 must be positive");
    }
    return 0.5 * (kLog2Pi + std::log(sigma2) + 1.0);
}

double normal_kl(const NormalParams& forecast, const NormalParams& truth) {
    const double dm = truth.mu - forecast.mu;
    const double ratio = truth.sigma2 / forecast.sigma2;
    return 0.5 * (dm * dm / forecast.sigma2 + ratio - std::log(ratio) - 1.0);
}

}  // namespace murphy
