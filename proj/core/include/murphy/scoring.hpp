#ifndef MURPHY_SCORING_HPP
#define MURPHY_SCORING_HPP

#include <string>

namespace murphy {

// Which consistent scoring function to evaluate forecasts with. The choice
// fixes the target functional: squared error elicits the mean, the check
// loss elicits the tau-quantile, and the log score is proper for density
// forecasts (restricted here to the normal family).
enum class LossKind { Squared, Check, LogScoreNormal };

struct LossSpec {
    LossKind kind = LossKind::Squared;
    double tau = 0.0;  // meaningful only for Check

    static LossSpec squared();
    static LossSpec check(double tau);
    static LossSpec log_score_normal();

    std::string name() const;
};

struct NormalParams {
    double mu = 0.0;
    double sigma2 = 1.0;

    NormalParams() = default;
    NormalParams(double mu_, double sigma2_);
};

// (x - y)^2
double squared_error(double forecast, double outcome);

// rho_tau(y - x) with rho_tau(u) = u * (tau - 1{u < 0})
double check_loss(double tau, double forecast, double outcome);

// Negative log density of N(mu, sigma2) at the outcome.
double log_score_normal(const NormalParams& pred, double outcome);

// Point-loss dispatcher for Squared and Check specs.
double loss_value(const LossSpec& loss, double forecast, double outcome);

// Entropy of N(mu, sigma2) under the log score: (log(2*pi*sigma2) + 1) / 2.
double normal_entropy(double sigma2);

// Kullback-Leibler divergence KL(truth || forecast) between two normals,
// i.e. the expected log-score gap of the forecast density w relative to the
// true density v. Nonnegative, zero iff the parameters coincide.
double normal_kl(const NormalParams& forecast, const NormalParams& truth);

}  // namespace murphy

#endif
